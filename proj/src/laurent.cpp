#include "clq/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace clq {

const char* err_name(Err e) {
    switch (e) {
        case Err::NonInvertibleImage: return "NonInvertibleImage";
        case Err::ZeroToNegativePower: return "ZeroToNegativePower";
        case Err::NonIntegralResult: return "NonIntegralResult";
        case Err::NonExactDivision: return "NonExactDivision";
        case Err::ParseError: return "ParseError";
        case Err::UnsupportedType: return "UnsupportedType";
        case Err::NotAlmostPositive: return "NotAlmostPositive";
        case Err::FrozenDirection: return "FrozenDirection";
        case Err::LimitExceeded: return "LimitExceeded";
        case Err::LabelingFailure: return "LabelingFailure";
        case Err::NoExpansion: return "NoExpansion";
        case Err::MultipleExpansions: return "MultipleExpansions";
        case Err::NotTwoRestricted: return "NotTwoRestricted";
        case Err::NotJDominant: return "NotJDominant";
        case Err::CapExceeded: return "CapExceeded";
        case Err::OutOfProvedScope: return "OutOfProvedScope";
        case Err::NegativeRemainder: return "NegativeRemainder";
        case Err::UnsupportedRoot: return "UnsupportedRoot";
        case Err::InterpolationMismatch: return "InterpolationMismatch";
        case Err::ScaleExceeded: return "ScaleExceeded";
        case Err::OutOfRange: return "OutOfRange";
        case Err::MismatchReport: return "MismatchReport";
        case Err::Overflow: return "Overflow";
        case Err::InvalidArgument: return "InvalidArgument";
    }
    return "Error";
}

// ---------------------------------------------------------------- registry

namespace {
struct Registry {
    std::mutex mu;
    std::unordered_map<std::string, VarId> ids;
    std::deque<std::string> names;  // stable references
};
Registry& registry() {
    static Registry r;
    return r;
}
}  // namespace

VarId var(const std::string& name) {
    auto& r = registry();
    std::lock_guard<std::mutex> lk(r.mu);
    auto it = r.ids.find(name);
    if (it != r.ids.end()) return it->second;
    VarId v = static_cast<VarId>(r.names.size());
    r.names.push_back(name);
    r.ids.emplace(name, v);
    return v;
}

const std::string& var_name(VarId v) {
    auto& r = registry();
    std::lock_guard<std::mutex> lk(r.mu);
    if (v < 0 || static_cast<std::size_t>(v) >= r.names.size())
        throw Error(Err::InvalidArgument, "unknown variable id " + std::to_string(v));
    return r.names[static_cast<std::size_t>(v)];
}

bool var_known(const std::string& name) {
    auto& r = registry();
    std::lock_guard<std::mutex> lk(r.mu);
    return r.ids.count(name) > 0;
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(VarId v, int e) {
    Monomial m;
    if (e != 0) m.e_.push_back({v, e});
    return m;
}

Monomial Monomial::from_entries(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end());
    Monomial m;
    for (auto& [v, e] : entries) {
        if (!m.e_.empty() && m.e_.back().first == v)
            m.e_.back().second += e;
        else
            m.e_.push_back({v, e});
    }
    std::erase_if(m.e_, [](const Entry& x) { return x.second == 0; });
    return m;
}

int Monomial::exponent(VarId v) const {
    auto it = std::lower_bound(e_.begin(), e_.end(), Entry{v, INT32_MIN});
    return (it != e_.end() && it->first == v) ? it->second : 0;
}

int Monomial::total_degree() const {
    int d = 0;
    for (auto& x : e_) d += x.second;
    return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.e_.reserve(e_.size() + o.e_.size());
    std::size_t i = 0, j = 0;
    while (i < e_.size() || j < o.e_.size()) {
        if (j == o.e_.size() || (i < e_.size() && e_[i].first < o.e_[j].first)) {
            r.e_.push_back(e_[i++]);
        } else if (i == e_.size() || o.e_[j].first < e_[i].first) {
            r.e_.push_back(o.e_[j++]);
        } else {
            int s = e_[i].second + o.e_[j].second;
            if (s != 0) r.e_.push_back({e_[i].first, s});
            ++i;
            ++j;
        }
    }
    return r;
}

Monomial Monomial::inverse() const {
    Monomial r = *this;
    for (auto& x : r.e_) x.second = -x.second;
    return r;
}

Monomial Monomial::pow(int k) const {
    if (k == 0) return Monomial();
    Monomial r = *this;
    for (auto& x : r.e_) x.second *= k;
    return r;
}

bool Monomial::divides(const Monomial& o) const {
    for (auto& x : (o * inverse()).e_)
        if (x.second < 0) return false;
    return true;
}

std::string Monomial::str() const {
    if (e_.empty()) return "1";
    std::string s;
    for (auto& [v, e] : e_) {
        if (!s.empty()) s += "*";
        s += var_name(v);
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

std::size_t Monomial::hash() const {
    std::size_t h = 1469598103934665603ULL;
    for (auto& [v, e] : e_) {
        h ^= static_cast<std::size_t>(v) * 0x9E3779B97F4A7C15ULL + static_cast<std::size_t>(e + 1000003);
        h *= 1099511628211ULL;
    }
    return h;
}

bool lex_greater(const Monomial& a, const Monomial& b) {
    const auto& x = a.entries();
    const auto& y = b.entries();
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        VarId v;
        int ea = 0, eb = 0;
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            v = x[i].first;
            ea = x[i++].second;
        } else if (i == x.size() || y[j].first < x[i].first) {
            v = y[j].first;
            eb = y[j++].second;
        } else {
            v = x[i].first;
            ea = x[i++].second;
            eb = y[j++].second;
        }
        (void)v;
        if (ea != eb) return ea > eb;
    }
    return false;
}

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(long c) {
    if (c != 0) t_.emplace(Monomial(), mpz_class(c));
}

LaurentPoly::LaurentPoly(const mpz_class& c) {
    if (c != 0) t_.emplace(Monomial(), c);
}

LaurentPoly::LaurentPoly(const Monomial& m, const mpz_class& c) {
    if (c != 0) t_.emplace(m, c);
}

LaurentPoly LaurentPoly::variable(VarId v, int e) { return LaurentPoly(Monomial::of(v, e)); }
LaurentPoly LaurentPoly::variable(const std::string& name, int e) { return variable(var(name), e); }

mpz_class LaurentPoly::coeff(const Monomial& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? mpz_class(0) : it->second;
}

void LaurentPoly::add_term(const Monomial& m, const mpz_class& c) {
    if (c == 0) return;
    auto [it, fresh] = t_.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (auto& [m, c] : o.t_) add_term(m, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    r += o;
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    r -= o;
    return r;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& kv : r.t_) kv.second = -kv.second;
    return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    if (t_.empty() || o.t_.empty()) return LaurentPoly();
    std::unordered_map<Monomial, mpz_class, MonomialHash> acc;
    acc.reserve(t_.size() * o.t_.size());
    mpz_class tmp;
    for (auto& [m1, c1] : t_)
        for (auto& [m2, c2] : o.t_) {
            tmp = c1 * c2;
            acc[m1 * m2] += tmp;
        }
    LaurentPoly r;
    for (auto& [m, c] : acc)
        if (c != 0) r.t_.emplace(m, std::move(c));
    return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
    *this = *this * o;
    return *this;
}

LaurentPoly LaurentPoly::pow(int k) const {
    if (k < 0) {
        if (!is_monomial())
            throw Error(Err::NonInvertibleImage, "negative power of non-monomial " + str());
        const auto& [m, c] = *t_.begin();
        if (c != 1 && c != -1)
            throw Error(Err::NonInvertibleImage, "negative power of non-unit " + str());
        mpz_class s = (c < 0 && (k % 2 != 0)) ? mpz_class(-1) : mpz_class(1);
        return LaurentPoly(m.pow(k), s);
    }
    LaurentPoly result(1), base = *this;
    while (k > 0) {
        if (k & 1) result *= base;
        k >>= 1;
        if (k) base *= base;
    }
    return result;
}

int LaurentPoly::min_exponent(VarId v) const {
    bool first = true;
    int mn = 0;
    for (auto& [m, c] : t_) {
        int e = m.exponent(v);
        if (first || e < mn) mn = e;
        first = false;
    }
    return mn;
}

std::vector<VarId> LaurentPoly::variables() const {
    std::vector<VarId> vs;
    for (auto& [m, c] : t_)
        for (auto& [v, e] : m.entries()) vs.push_back(v);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

bool LaurentPoly::all_coefficients_positive() const {
    for (auto& [m, c] : t_)
        if (c <= 0) return false;
    return true;
}

mpz_class LaurentPoly::coefficient_sum() const {
    mpz_class s = 0;
    for (auto& [m, c] : t_) s += c;
    return s;
}

std::string LaurentPoly::str() const {
    if (t_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto& [m, c] : t_) {
        mpz_class a = abs(c);
        if (first) {
            if (c < 0) s += "-";
        } else {
            s += (c < 0) ? " - " : " + ";
        }
        first = false;
        if (m.is_one()) {
            s += a.get_str();
        } else {
            if (a != 1) s += a.get_str() + "*";
            s += m.str();
        }
    }
    return s;
}

// ---------------------------------------------------------------- parsing

namespace {

struct Parser {
    const std::string& s;
    std::size_t i = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw Error(Err::ParseError, what + " at position " + std::to_string(i) + " in '" + s + "'");
    }
    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool at_end() {
        skip();
        return i >= s.size();
    }
    long read_int() {
        skip();
        bool neg = false;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) fail("expected integer");
        long v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) v = v * 10 + (s[i++] - '0');
        return neg ? -v : v;
    }
    int read_exponent() {
        skip();
        if (i < s.size() && s[i] == '(') {
            ++i;
            long e = read_int();
            skip();
            if (i >= s.size() || s[i] != ')') fail("expected ')'");
            ++i;
            return static_cast<int>(e);
        }
        return static_cast<int>(read_int());
    }
    std::string read_name() {
        std::size_t b = i;
        while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
        if (i < s.size() && s[i] == '[') {
            while (i < s.size() && s[i] != ']') ++i;
            if (i >= s.size()) fail("unterminated '['");
            ++i;
        }
        std::string raw = s.substr(b, i - b);
        std::string name;
        for (char c : raw)
            if (!std::isspace(static_cast<unsigned char>(c))) name += c;
        return name;
    }

    // expr := [+-] term {(+|-) term}
    LaurentPoly expr() {
        LaurentPoly r;
        bool first = true;
        for (;;) {
            skip();
            int sign = 1;
            bool had_op = false;
            while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
                if (s[i] == '-') sign = -sign;
                ++i;
                had_op = true;
                skip();
            }
            if (!first && !had_op) break;
            if (i >= s.size() || s[i] == ')') {
                if (had_op) fail("dangling operator");
                if (first) fail("empty expression");
                break;
            }
            LaurentPoly t = term();
            if (sign < 0) t = -t;
            r += t;
            first = false;
        }
        return r;
    }
    // term := factor {[*] factor}
    LaurentPoly term() {
        LaurentPoly r = factor();
        for (;;) {
            skip();
            if (i >= s.size() || s[i] == '+' || s[i] == '-' || s[i] == ')') return r;
            if (s[i] == '*') {
                ++i;
                skip();
            }
            r *= factor();
        }
    }
    LaurentPoly factor() {
        skip();
        if (i >= s.size()) fail("expected factor");
        LaurentPoly a;
        if (s[i] == '(') {
            ++i;
            a = expr();
            skip();
            if (i >= s.size() || s[i] != ')') fail("expected ')'");
            ++i;
        } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            std::size_t b = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            a = LaurentPoly(mpz_class(s.substr(b, i - b)));
        } else if (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_') {
            a = LaurentPoly::variable(var(read_name()));
        } else {
            fail(std::string("unexpected character '") + s[i] + "'");
        }
        skip();
        if (i < s.size() && s[i] == '^') {
            ++i;
            int e = read_exponent();
            if (e < 0 && !a.is_monomial()) fail("negative power of a non-monomial");
            a = a.pow(e);
        }
        return a;
    }
};

}  // namespace

LaurentPoly LaurentPoly::parse(const std::string& s) {
    Parser p{s};
    if (p.at_end()) throw Error(Err::ParseError, "empty polynomial");
    LaurentPoly r = p.expr();
    if (!p.at_end()) p.fail("unexpected ')'");
    return r;
}

nlohmann::json LaurentPoly::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (auto& [m, c] : t_) {
        nlohmann::json mono = nlohmann::json::object();
        for (auto& [v, e] : m.entries()) mono[var_name(v)] = e;
        terms.push_back({{"coeff", c.get_str()}, {"mono", mono}});
    }
    return {{"terms", terms}};
}

LaurentPoly LaurentPoly::from_json(const nlohmann::json& j) {
    LaurentPoly r;
    if (!j.contains("terms") || !j["terms"].is_array()) throw Error(Err::ParseError, "missing 'terms' array");
    for (auto& t : j["terms"]) {
        mpz_class c;
        if (t.at("coeff").is_string())
            c = mpz_class(t["coeff"].get<std::string>());
        else
            c = mpz_class(t["coeff"].get<long>());
        std::vector<Monomial::Entry> es;
        for (auto& [k, v] : t.at("mono").items()) es.push_back({var(k), v.get<int>()});
        r.add_term(Monomial::from_entries(es), c);
    }
    return r;
}

LaurentPoly arith(const LaurentPoly& a, const LaurentPoly& b, const std::string& op) {
    if (op == "add") return a + b;
    if (op == "sub") return a - b;
    if (op == "mul") return a * b;
    throw Error(Err::InvalidArgument, "unknown op " + op);
}

// ---------------------------------------------------------------- substitution

LaurentPoly substitute(const LaurentPoly& p, const std::map<VarId, LaurentPoly>& images) {
    std::map<std::pair<VarId, int>, LaurentPoly> powers;
    auto power = [&](VarId v, int e) -> const LaurentPoly& {
        auto key = std::make_pair(v, e);
        auto it = powers.find(key);
        if (it != powers.end()) return it->second;
        const LaurentPoly& img = images.at(v);
        if (e < 0 && !img.is_monomial())
            throw Error(Err::NonInvertibleImage,
                        "variable " + var_name(v) + " has negative exponent but image " + img.str());
        return powers.emplace(key, img.pow(e)).first->second;
    };
    LaurentPoly r;
    for (auto& [m, c] : p.terms()) {
        LaurentPoly term(c);
        std::vector<Monomial::Entry> pass;
        for (auto& [v, e] : m.entries()) {
            if (images.count(v))
                term *= power(v, e);
            else
                pass.push_back({v, e});
        }
        if (!pass.empty()) term *= LaurentPoly(Monomial::from_entries(pass));
        r += term;
    }
    return r;
}

namespace {
template <class Q>
mpq_class eval_impl(const LaurentPoly& p, const std::map<VarId, Q>& point) {
    mpq_class total = 0;
    for (auto& [m, c] : p.terms()) {
        mpq_class t = c;
        for (auto& [v, e] : m.entries()) {
            auto it = point.find(v);
            if (it == point.end()) throw Error(Err::InvalidArgument, "variable " + var_name(v) + " not assigned");
            mpq_class x = it->second;
            if (x == 0 && e < 0) throw Error(Err::ZeroToNegativePower, var_name(v));
            mpq_class pw = 1;
            int k = e < 0 ? -e : e;
            for (int s = 0; s < k; ++s) pw *= x;
            if (e < 0) pw = 1 / pw;
            t *= pw;
        }
        total += t;
    }
    total.canonicalize();
    return total;
}
}  // namespace

mpq_class evaluate_exact(const LaurentPoly& p, const std::map<VarId, mpz_class>& point) {
    return eval_impl(p, point);
}

mpq_class evaluate_exact(const LaurentPoly& p, const std::map<VarId, mpq_class>& point) {
    return eval_impl(p, point);
}

mpz_class evaluate_integer(const LaurentPoly& p, const std::map<VarId, mpz_class>& point) {
    mpq_class q = evaluate_exact(p, point);
    if (q.get_den() != 1) throw Error(Err::NonIntegralResult, q.get_str());
    return q.get_num();
}

// ---------------------------------------------------------------- division

namespace {
// multiply so that each variable has minimal exponent 0
Monomial shift_to_polynomial(const LaurentPoly& p) {
    std::vector<Monomial::Entry> sh;
    for (VarId v : p.variables()) {
        int mn = p.min_exponent(v);
        if (mn != 0) sh.push_back({v, -mn});
    }
    return Monomial::from_entries(sh);
}

LaurentPoly times_monomial(const LaurentPoly& p, const Monomial& m) {
    LaurentPoly r;
    for (auto& [mm, c] : p.terms()) r.add_term(mm * m, c);
    return r;
}

const std::pair<const Monomial, mpz_class>& leading(const LaurentPoly& p) {
    auto best = p.terms().begin();
    for (auto it = std::next(best); it != p.terms().end(); ++it)
        if (lex_greater(it->first, best->first)) best = it;
    return *best;
}
}  // namespace

LaurentPoly divide_exact(const LaurentPoly& a, const LaurentPoly& b) {
    if (b.is_zero()) throw Error(Err::NonExactDivision, "division by zero");
    if (a.is_zero()) return LaurentPoly();
    if (b.is_monomial()) {
        const auto& [m, c] = *b.terms().begin();
        LaurentPoly r;
        for (auto& [mm, cc] : a.terms()) {
            if (!mpz_divisible_p(cc.get_mpz_t(), c.get_mpz_t()))
                throw Error(Err::NonExactDivision, "coefficient " + cc.get_str() + " by " + c.get_str());
            mpz_class q = cc / c;
            r.add_term(mm * m.inverse(), q);
        }
        return r;
    }
    Monomial sa = shift_to_polynomial(a), sb = shift_to_polynomial(b);
    LaurentPoly rem = times_monomial(a, sa);
    LaurentPoly bb = times_monomial(b, sb);
    const auto lb = leading(bb);
    LaurentPoly q;
    while (!rem.is_zero()) {
        auto lr = leading(rem);
        if (!lb.first.divides(lr.first) || !mpz_divisible_p(lr.second.get_mpz_t(), lb.second.get_mpz_t()))
            throw Error(Err::NonExactDivision, a.str() + " by " + b.str());
        Monomial qm = lr.first * lb.first.inverse();
        mpz_class qc = lr.second / lb.second;
        LaurentPoly t(qm, qc);
        q += t;
        rem -= times_monomial(bb, qm) * LaurentPoly(qc);
    }
    // a*sa = q * b*sb  =>  a/b = q * sb / sa
    return times_monomial(q, sb * sa.inverse());
}

}  // namespace clq
