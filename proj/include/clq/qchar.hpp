#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "clq/laurent.hpp"
#include "clq/roots.hpp"

namespace clq {

// (vertex, spectral exponent); vertices 0-based internally
struct IR {
    int i = 0;
    int r = 0;
    auto operator<=>(const IR&) const = default;
};

// Sparse map IR -> nonzero exponent. Used both for Y-monomials and A-vectors.
class IRMono {
public:
    using Entry = std::pair<IR, int>;
    IRMono() = default;
    static IRMono of(int i, int r, int e = 1);
    static IRMono from_entries(std::vector<Entry> es);

    const std::vector<Entry>& entries() const { return e_; }
    bool empty() const { return e_.empty(); }
    int exp(int i, int r) const;
    int degree() const;
    void add(IR k, int e);
    IRMono operator*(const IRMono& o) const;
    IRMono inverse() const;
    IRMono pow(int k) const;
    bool dominant() const;
    bool dominant_at(int i) const;
    int min_r() const;
    int max_r() const;
    IRMono restrict_to(const std::vector<int>& verts) const;  // vertices kept, relabelled 0..k-1

    auto operator<=>(const IRMono&) const = default;
    bool operator==(const IRMono&) const = default;
    std::size_t hash() const;
    std::string str(char letter = 'Y') const;  // "Y[1,0]^2*Y[2,3]"; "1" when empty

private:
    std::vector<Entry> e_;
};

struct IRMonoHash {
    std::size_t operator()(const IRMono& m) const { return m.hash(); }
};

using YMonomial = IRMono;
using AVector = IRMono;  // exponents of A^{-1}
using Mult = std::int64_t;
using YPoly = std::map<YMonomial, Mult>;

YMonomial parse_ymonomial(const std::string& s);
YMonomial a_monomial(int i, int r, const DynkinData& d);
std::vector<int> omega_weight(const YMonomial& m);  // length n is implied by the largest vertex; see overload
std::vector<int> omega_weight(const YMonomial& m, int n);
YMonomial a_inverse_product(const AVector& a, const DynkinData& d);

Mult checked_add(Mult a, Mult b);
Mult checked_mul(Mult a, Mult b);

// highest monomial times a sum of A-inverse monomials
struct DecoratedQChar {
    YMonomial hw;
    std::map<AVector, Mult> terms;

    static DecoratedQChar unit(const YMonomial& m);
    YPoly flatten(const DynkinData& d) const;
    Mult dimension() const;
    std::size_t size() const { return terms.size(); }
    nlohmann::json to_json(const DynkinData& d) const;
};

DecoratedQChar multiply(const DecoratedQChar& a, const DecoratedQChar& b);
DecoratedQChar power(const DecoratedQChar& a, int k);
// monomials of c that are dominant, as Y-monomials with multiplicity
std::vector<std::pair<YMonomial, Mult>> dominant_terms(const DecoratedQChar& c, const DynkinData& d);

YPoly ypoly_mul(const YPoly& a, const YPoly& b);
YPoly ypoly_add(const YPoly& a, const YPoly& b, Mult sign = 1);
Mult ypoly_dimension(const YPoly& p);
std::string ypoly_str(const YPoly& p);

struct QSegment {
    int origin = 0;
    int length = 1;
    auto operator<=>(const QSegment&) const = default;
};

std::vector<QSegment> segment_decompose(std::vector<int> multiset);
bool general_position(const QSegment& a, const QSegment& b);
// sl2 character; vertex index 0, A-vectors in spectral exponents
DecoratedQChar sl2_simple_qchar(const std::vector<int>& multiset);
DecoratedQChar sl2_kr_qchar(int k, int a);

struct FMOptions {
    std::size_t max_monomials = 1000000;
    int spectral_margin = -1;         // default 2h
    int prune_above = 1 << 30;        // drop A_{i,r} with r above this (exact for the part kept)
    std::uint64_t order_seed = 0;     // 0: degree then lex; otherwise random positive weights
};

DecoratedQChar frenkel_mukhin(const YMonomial& m, const DynkinData& d, const FMOptions& opt = {});
DecoratedQChar phi_restricted(const YMonomial& m, const std::vector<int>& J, const DynkinData& d,
                              const FMOptions& opt = {});

enum class TruncMode { Le2, Ge3 };
DecoratedQChar truncate(const DecoratedQChar& c, TruncMode mode, int threshold = 2);

// Kirillov-Reshetikhin module W^{(i)}_{k,r} = L(Y_{i,r} Y_{i,r+2} ... Y_{i,r+2k-2})
YMonomial kr_monomial(int i, int k, int r);
const DecoratedQChar& kr_qchar(int i, int k, int r, const DynkinData& d);
bool t_system_check(int i, int k, int r, const DynkinData& d);
// k x k tridiagonal determinant of fundamental sl2 characters
YPoly sl2_kr_determinant(int k, int r);

}  // namespace clq
