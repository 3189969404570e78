#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "clq/errors.hpp"

namespace clq {

using VarId = int;

// Global append-only name table. Thread safe.
VarId var(const std::string& name);
const std::string& var_name(VarId v);
bool var_known(const std::string& name);

class Monomial {
public:
    using Entry = std::pair<VarId, int>;

    Monomial() = default;
    static Monomial of(VarId v, int e = 1);
    static Monomial from_entries(std::vector<Entry> entries);

    const std::vector<Entry>& entries() const { return e_; }
    bool is_one() const { return e_.empty(); }
    int exponent(VarId v) const;
    int total_degree() const;

    Monomial operator*(const Monomial& o) const;
    Monomial inverse() const;
    Monomial pow(int k) const;
    // this divides o in the polynomial sense after both are shifted
    bool divides(const Monomial& o) const;

    // lexicographic on (VarId, exponent); serialization order
    auto operator<=>(const Monomial&) const = default;
    bool operator==(const Monomial&) const = default;

    std::string str() const;
    std::size_t hash() const;

private:
    std::vector<Entry> e_;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

// true iff a > b in pure lex order on dense exponent vectors
bool lex_greater(const Monomial& a, const Monomial& b);

class LaurentPoly {
public:
    using Terms = std::map<Monomial, mpz_class>;

    LaurentPoly() = default;
    LaurentPoly(long c);
    LaurentPoly(const mpz_class& c);
    LaurentPoly(const Monomial& m, const mpz_class& c = 1);
    static LaurentPoly variable(VarId v, int e = 1);
    static LaurentPoly variable(const std::string& name, int e = 1);

    const Terms& terms() const { return t_; }
    std::size_t size() const { return t_.size(); }
    bool is_zero() const { return t_.empty(); }
    bool is_monomial() const { return t_.size() == 1; }
    mpz_class coeff(const Monomial& m) const;
    mpz_class constant_term() const { return coeff(Monomial()); }
    void add_term(const Monomial& m, const mpz_class& c);

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);
    LaurentPoly pow(int k) const;  // negative k only for monomials
    bool operator==(const LaurentPoly& o) const { return t_ == o.t_; }
    bool operator<(const LaurentPoly& o) const { return t_ < o.t_; }

    // smallest exponent of v over all terms (0 for absent)
    int min_exponent(VarId v) const;
    std::vector<VarId> variables() const;
    bool all_coefficients_positive() const;
    mpz_class coefficient_sum() const;

    std::string str() const;
    static LaurentPoly parse(const std::string& s);
    nlohmann::json to_json() const;
    static LaurentPoly from_json(const nlohmann::json& j);

private:
    Terms t_;
};

LaurentPoly arith(const LaurentPoly& a, const LaurentPoly& b, const std::string& op);

// Unassigned variables pass through. Negative powers need monomial images.
LaurentPoly substitute(const LaurentPoly& p, const std::map<VarId, LaurentPoly>& images);

// Exact value at an integer point; every variable of p must be assigned.
mpq_class evaluate_exact(const LaurentPoly& p, const std::map<VarId, mpz_class>& point);
mpq_class evaluate_exact(const LaurentPoly& p, const std::map<VarId, mpq_class>& point);
mpz_class evaluate_integer(const LaurentPoly& p, const std::map<VarId, mpz_class>& point);

// a / b in the Laurent ring; Err::NonExactDivision when b does not divide a.
LaurentPoly divide_exact(const LaurentPoly& a, const LaurentPoly& b);

}  // namespace clq
