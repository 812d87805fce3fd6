#include "flagstrata/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <tuple>

namespace flagstrata {
namespace detail {

namespace {

std::int64_t norm_mod(std::int64_t x, std::int64_t p) {
    std::int64_t r = x % p;
    return r < 0 ? r + p : r;
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::int64_t pow_mod(std::int64_t a, std::int64_t n, std::int64_t p) {
    std::int64_t r = 1;
    a = norm_mod(a, p);
    while (n > 0) {
        if (n & 1) r = r * a % p;
        a = a * a % p;
        n >>= 1;
    }
    return r;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
    a = norm_mod(a, p);
    if (a == 0) throw DomainError("division by zero in F_" + std::to_string(p));
    return pow_mod(a, p - 2, p);
}

// Polynomial helpers over F_p, coefficients low -> high.
using Poly = std::vector<std::int64_t>;

std::int64_t poly_eval(const Poly& f, std::int64_t x, std::int64_t p) {
    std::int64_t r = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) r = norm_mod(r * x + *it, p);
    return r;
}

// Remainder of monic division f mod (monic) g.
Poly poly_rem(Poly f, const Poly& g, std::int64_t p) {
    const int dg = static_cast<int>(g.size()) - 1;
    while (static_cast<int>(f.size()) - 1 >= dg) {
        std::int64_t lead = norm_mod(f.back(), p);
        if (lead != 0) {
            const std::size_t shift = f.size() - 1 - dg;
            for (int i = 0; i <= dg; ++i)
                f[shift + i] = norm_mod(f[shift + i] - lead * g[i], p);
        }
        f.pop_back();
    }
    return f;
}

bool poly_is_zero(const Poly& f, std::int64_t p) {
    return std::all_of(f.begin(), f.end(), [p](std::int64_t c) { return norm_mod(c, p) == 0; });
}

bool is_irreducible(const Poly& f, std::int64_t p) {
    const int deg = static_cast<int>(f.size()) - 1;
    for (std::int64_t x = 0; x < p; ++x)
        if (poly_eval(f, x, p) == 0) return false;
    if (deg == 2) return true;
    // degree 4: also exclude monic quadratic factors
    for (std::int64_t c1 = 0; c1 < p; ++c1)
        for (std::int64_t c0 = 0; c0 < p; ++c0)
            if (poly_is_zero(poly_rem(f, Poly{c0, c1, 1}, p), p)) return false;
    return true;
}

// Lexicographically first monic irreducible of degree e over F_p, where the
// coefficient vector (c_{e-1}, ..., c_1, c_0) is minimized.
Poly lex_first_modulus(std::int64_t p, int e) {
    std::vector<std::int64_t> high(e, 0);  // (c_{e-1}, ..., c_0)
    while (true) {
        Poly f(e + 1, 0);
        f[e] = 1;
        for (int i = 0; i < e; ++i) f[e - 1 - i] = high[i];
        if (is_irreducible(f, p)) return f;
        int i = e - 1;
        while (i >= 0 && ++high[i] == p) high[i--] = 0;
        if (i < 0) throw DomainError("no irreducible modulus found");  // unreachable
    }
}

int cmp_rational_key(const Rational& x, const Rational& y) {
    const bool nx = x < 0, ny = y < 0;
    if (nx != ny) return nx ? 1 : -1;  // nonnegatives first
    if (x == y) return 0;
    if (!nx) return x < y ? -1 : 1;
    return (-x) < (-y) ? -1 : 1;  // negatives by ascending magnitude
}

std::string bigint_str(const BigInt& n) { return n.str(); }

std::string rat_str(const Rational& r) {
    const BigInt num = numerator(r), den = denominator(r);
    if (den == 1) return bigint_str(num);
    return bigint_str(num) + "/" + bigint_str(den);
}

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

Rational parse_rational(const std::string& lit) {
    std::string s = lit;
    if (s.empty()) throw ParseError("empty element literal");
    const auto slash = s.find('/');
    std::string ns = slash == std::string::npos ? s : s.substr(0, slash);
    std::string ds = slash == std::string::npos ? "1" : s.substr(slash + 1);
    bool nneg = false, dneg = false;
    if (!ns.empty() && (ns[0] == '-' || ns[0] == '+')) {
        nneg = ns[0] == '-';
        ns = ns.substr(1);
    }
    if (!ds.empty() && (ds[0] == '-' || ds[0] == '+')) {
        dneg = ds[0] == '-';
        ds = ds.substr(1);
    }
    if (!all_digits(ns) || !all_digits(ds)) throw ParseError("bad numeric literal: " + lit);
    BigInt num(ns), den(ds);
    if (den == 0) throw ParseError("division by zero in literal: " + lit);
    if (nneg) num = -num;
    if (dneg) num = -num;
    return Rational(num, den);
}

// Splits s on commas at bracket depth zero.
std::vector<std::string> split_top_level(const std::string& s) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if (c == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::string strip_ws(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

}  // namespace

struct FieldData {
    std::int64_t p = 0;  // 0 for char 0
    int e = 1;
    Poly mod;  // finite, e > 1: monic modulus, low -> high
    std::vector<std::vector<Rational>> radicands;

    int degree() const { return p ? e : (1 << radicands.size()); }
    std::uint64_t order() const {
        if (!p) return 0;
        std::uint64_t q = 1;
        for (int i = 0; i < e; ++i) q *= static_cast<std::uint64_t>(p);
        return q;
    }
    bool gaussian_bottom() const {
        return !radicands.empty() && radicands[0].size() == 1 && radicands[0][0] == -1;
    }

    bool equals(const FieldData& o) const {
        return p == o.p && e == o.e && mod == o.mod && radicands == o.radicands;
    }

    static FieldCtx wrap(std::shared_ptr<const FieldData> d) { return FieldCtx(std::move(d)); }
    static FieldElement make_elem(const FieldCtx& ctx, std::vector<std::int64_t> fin,
                                  std::vector<Rational> rat) {
        FieldElement x;
        x.ctx_ = ctx;
        x.fin_ = std::move(fin);
        x.rat_ = std::move(rat);
        return x;
    }

    // ---- finite coordinate arithmetic ----
    std::vector<std::int64_t> f_add(const std::vector<std::int64_t>& a,
                                    const std::vector<std::int64_t>& b, int sign) const {
        std::vector<std::int64_t> r(e);
        for (int i = 0; i < e; ++i) r[i] = norm_mod(a[i] + sign * b[i], p);
        return r;
    }
    std::vector<std::int64_t> f_mul(const std::vector<std::int64_t>& a,
                                    const std::vector<std::int64_t>& b) const {
        if (e == 1) return {a[0] * b[0] % p};
        Poly prod(2 * e - 1, 0);
        for (int i = 0; i < e; ++i)
            for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
        Poly r = poly_rem(std::move(prod), mod, p);
        r.resize(e, 0);
        return r;
    }
    std::vector<std::int64_t> f_pow(std::vector<std::int64_t> a, std::uint64_t n) const {
        std::vector<std::int64_t> r(e, 0);
        r[0] = 1;
        while (n > 0) {
            if (n & 1) r = f_mul(r, a);
            a = f_mul(a, a);
            n >>= 1;
        }
        return r;
    }

    // ---- char-0 tower arithmetic (coordinates over Q, length 1 << level) ----
    void c0_mul(const Rational* a, const Rational* b, Rational* out, int level) const {
        if (level == 0) {
            out[0] = a[0] * b[0];
            return;
        }
        const int h = 1 << (level - 1);
        const Rational* r = radicands[level - 1].data();
        std::vector<Rational> t1(h), t2(h), t3(h);
        c0_mul(a, b, t1.data(), level - 1);
        c0_mul(a + h, b + h, t2.data(), level - 1);
        c0_mul(t2.data(), r, t3.data(), level - 1);
        for (int i = 0; i < h; ++i) out[i] = t1[i] + t3[i];
        c0_mul(a, b + h, t1.data(), level - 1);
        c0_mul(a + h, b, t2.data(), level - 1);
        for (int i = 0; i < h; ++i) out[h + i] = t1[i] + t2[i];
    }

    void c0_inv(const Rational* a, Rational* out, int level) const {
        if (level == 0) {
            if (a[0] == 0) throw DomainError("division by zero");
            out[0] = 1 / a[0];
            return;
        }
        const int h = 1 << (level - 1);
        const Rational* r = radicands[level - 1].data();
        // (a0 + a1 s)^-1 = (a0 - a1 s) / (a0^2 - a1^2 r),  s^2 = r
        std::vector<Rational> a0sq(h), a1sq(h), a1sqr(h), norm(h), ninv(h);
        c0_mul(a, a, a0sq.data(), level - 1);
        c0_mul(a + h, a + h, a1sq.data(), level - 1);
        c0_mul(a1sq.data(), r, a1sqr.data(), level - 1);
        for (int i = 0; i < h; ++i) norm[i] = a0sq[i] - a1sqr[i];
        c0_inv(norm.data(), ninv.data(), level - 1);
        std::vector<Rational> lo(h), hi(h), nega1(h);
        c0_mul(a, ninv.data(), lo.data(), level - 1);
        for (int i = 0; i < h; ++i) nega1[i] = -a[h + i];
        c0_mul(nega1.data(), ninv.data(), hi.data(), level - 1);
        for (int i = 0; i < h; ++i) {
            out[i] = lo[i];
            out[h + i] = hi[i];
        }
    }

    static std::optional<Rational> sqrt_rational(const Rational& x) {
        if (x < 0) return std::nullopt;
        if (x == 0) return Rational(0);
        const BigInt n = numerator(x), d = denominator(x);
        const BigInt sn = boost::multiprecision::sqrt(n), sd = boost::multiprecision::sqrt(d);
        if (sn * sn == n && sd * sd == d) return Rational(sn, sd);
        return std::nullopt;
    }

    std::optional<std::vector<Rational>> c0_sqrt(const Rational* a, int level) const {
        if (level == 0) {
            auto s = sqrt_rational(a[0]);
            if (!s) return std::nullopt;
            return std::vector<Rational>{*s};
        }
        const int h = 1 << (level - 1);
        const Rational* r = radicands[level - 1].data();
        const bool hi_zero = std::all_of(a + h, a + 2 * h, [](const Rational& c) { return c == 0; });
        auto pack = [h](const std::vector<Rational>& lo, const std::vector<Rational>& hi) {
            std::vector<Rational> out(2 * h);
            for (int i = 0; i < h; ++i) {
                out[i] = lo[i];
                out[h + i] = hi[i];
            }
            return out;
        };
        const std::vector<Rational> zeros(h, Rational(0));
        if (hi_zero) {
            if (auto s = c0_sqrt(a, level - 1)) return pack(*s, zeros);
            // a = (y s)^2  <=>  y^2 = a / r
            std::vector<Rational> rinv(h), t(h);
            c0_inv(r, rinv.data(), level - 1);
            c0_mul(a, rinv.data(), t.data(), level - 1);
            if (auto y = c0_sqrt(t.data(), level - 1)) return pack(zeros, *y);
            return std::nullopt;
        }
        // (x + y s)^2 = a0 + a1 s:  x^2 = (a0 +- sqrt(a0^2 - a1^2 r)) / 2, y = a1 / (2x)
        std::vector<Rational> a0sq(h), a1sq(h), a1sqr(h), disc(h);
        c0_mul(a, a, a0sq.data(), level - 1);
        c0_mul(a + h, a + h, a1sq.data(), level - 1);
        c0_mul(a1sq.data(), r, a1sqr.data(), level - 1);
        for (int i = 0; i < h; ++i) disc[i] = a0sq[i] - a1sqr[i];
        auto sd = c0_sqrt(disc.data(), level - 1);
        if (!sd) return std::nullopt;
        for (int sign = 0; sign < 2; ++sign) {
            std::vector<Rational> cand(h);
            for (int i = 0; i < h; ++i)
                cand[i] = (a[i] + (sign == 0 ? (*sd)[i] : -(*sd)[i])) / 2;
            if (std::all_of(cand.begin(), cand.end(), [](const Rational& c) { return c == 0; }))
                continue;
            auto x = c0_sqrt(cand.data(), level - 1);
            if (!x) continue;
            if (std::all_of(x->begin(), x->end(), [](const Rational& c) { return c == 0; })) continue;
            std::vector<Rational> xinv(h), y(h), half_a1(h);
            c0_inv(x->data(), xinv.data(), level - 1);
            for (int i = 0; i < h; ++i) half_a1[i] = a[h + i] / 2;
            c0_mul(half_a1.data(), xinv.data(), y.data(), level - 1);
            return pack(*x, y);
        }
        return std::nullopt;
    }

    // ---- printing / parsing of char-0 coordinates ----
    std::string c0_str(const Rational* a, int level) const {
        if (level == 0) return rat_str(a[0]);
        if (level == 1 && gaussian_bottom()) {
            const Rational &re = a[0], &im = a[1];
            if (im == 0) return rat_str(re);
            if (re == 0) return rat_str(im) + "i";
            if (im < 0) return rat_str(re) + "-" + rat_str(-im) + "i";
            return rat_str(re) + "+" + rat_str(im) + "i";
        }
        const int h = 1 << (level - 1);
        return "[" + c0_str(a, level - 1) + "," + c0_str(a + h, level - 1) + "]";
    }

    void c0_parse(const std::string& lit, Rational* out, int level) const {
        const std::string s = strip_ws(lit);
        if (s.empty()) throw ParseError("empty element literal");
        const int dim = 1 << level;
        std::fill(out, out + dim, Rational(0));
        if (level == 0) {
            out[0] = parse_rational(s);
            return;
        }
        if (s.front() == '[') {
            if (s.back() != ']') throw ParseError("unbalanced brackets in: " + lit);
            auto parts = split_top_level(s.substr(1, s.size() - 2));
            if (parts.size() != 2)
                throw ParseError("tower literal needs exactly 2 coordinates: " + lit);
            c0_parse(parts[0], out, level - 1);
            c0_parse(parts[1], out + dim / 2, level - 1);
            return;
        }
        if (level == 1 && gaussian_bottom()) {
            parse_gaussian(s, out[0], out[1]);
            return;
        }
        // constant from the field one level down
        c0_parse(s, out, level - 1);
    }

    static void parse_gaussian(const std::string& s, Rational& re, Rational& im) {
        if (s.empty()) throw ParseError("empty element literal");
        if (s.back() != 'i') {
            re = parse_rational(s);
            im = 0;
            return;
        }
        const std::string body = s.substr(0, s.size() - 1);
        // split at the rightmost top-level sign (not the leading one)
        std::size_t split = std::string::npos;
        for (std::size_t k = body.size(); k-- > 1;) {
            if (body[k] == '+' || body[k] == '-') {
                if (body[k - 1] == '/') continue;  // sign of a denominator
                split = k;
                break;
            }
        }
        if (split == std::string::npos) {
            re = 0;
            im = parse_rational(body);
            return;
        }
        re = parse_rational(body.substr(0, split));
        std::string imag = body.substr(split);
        if (imag == "+" || imag == "-") throw ParseError("missing imaginary coefficient: " + s);
        im = parse_rational(imag);
    }
};

}  // namespace detail

using detail::FieldData;

namespace {

std::shared_ptr<const FieldData> require(const FieldCtx& c) {
    if (!c.valid()) throw DomainError("use of empty field context");
    return std::shared_ptr<const FieldData>(&c.data(), [](auto*) {});
}

const FieldData& D(const FieldCtx& c) {
    if (!c.valid()) throw DomainError("use of empty field context");
    return c.data();
}

void check_same_ctx(const FieldElement& a, const FieldElement& b) {
    if (!a.valid() || !b.valid()) throw DomainError("use of empty field element");
    if (!(a.ctx() == b.ctx()))
        throw DomainError("mismatched field contexts: " + a.ctx().descriptor() + " vs " +
                          b.ctx().descriptor());
}

}  // namespace

// ------------------------------- FieldCtx --------------------------------

const detail::FieldData& FieldCtx::data() const {
    if (!d_) throw DomainError("use of empty field context");
    return *d_;
}

FieldCtx FieldCtx::rationals() {
    auto d = std::make_shared<FieldData>();
    return FieldData::wrap(d);
}

FieldCtx FieldCtx::gaussian_rationals() {
    auto d = std::make_shared<FieldData>();
    d->radicands.push_back({Rational(-1)});
    return FieldData::wrap(d);
}

FieldCtx FieldCtx::prime(std::int64_t p) { return prime_power(p, 1); }

FieldCtx FieldCtx::prime_power(std::int64_t p, int e) {
    if (p == 2) throw DomainError("characteristic 2 is not supported (2 must be invertible)");
    if (!detail::is_prime(p)) throw DomainError("not a prime: " + std::to_string(p));
    if (e != 1 && e != 2 && e != 4)
        throw DomainError("unsupported extension degree " + std::to_string(e) +
                          " (supported: 1, 2, 4)");
    auto d = std::make_shared<FieldData>();
    d->p = p;
    d->e = e;
    if (e > 1) {
        static std::map<std::pair<std::int64_t, int>, detail::Poly> cache;
        static std::mutex mu;
        std::lock_guard lock(mu);
        auto it = cache.find({p, e});
        if (it == cache.end()) it = cache.emplace(std::pair{p, e}, detail::lex_first_modulus(p, e)).first;
        d->mod = it->second;
    }
    return FieldData::wrap(d);
}

FieldCtx FieldCtx::of_order(std::uint64_t q) {
    if (q < 3) throw DomainError("field order must be an odd prime power >= 3");
    std::int64_t p = 0;
    for (std::int64_t c = 2; static_cast<std::uint64_t>(c) * c <= q; ++c)
        if (q % c == 0) {
            p = c;
            break;
        }
    if (p == 0) return prime(static_cast<std::int64_t>(q));
    int e = 0;
    std::uint64_t qq = q;
    while (qq % p == 0) {
        qq /= p;
        ++e;
    }
    if (qq != 1) throw DomainError("not a prime power: " + std::to_string(q));
    return prime_power(p, e);
}

FieldCtx FieldCtx::make(const std::string& descriptor) {
    std::string s = detail::strip_ws(descriptor);
    // tower suffixes
    std::vector<std::string> segments;
    while (true) {
        const auto pos = s.rfind("[rt:");
        if (pos == std::string::npos || s.back() != ']') break;
        segments.push_back(s.substr(pos + 4, s.size() - pos - 5));
        s = s.substr(0, pos);
    }
    std::reverse(segments.begin(), segments.end());
    FieldCtx base;
    if (s == "Q") {
        base = rationals();
    } else if (s == "Qi") {
        base = gaussian_rationals();
    } else if (s.rfind("Fp:", 0) == 0) {
        const std::string ps = s.substr(3);
        if (!detail::all_digits(ps)) throw ParseError("bad field descriptor: " + descriptor);
        base = prime(std::stoll(ps));
    } else if (s.rfind("Fq:", 0) == 0) {
        const auto caret = s.find('^');
        if (caret == std::string::npos) throw ParseError("bad field descriptor: " + descriptor);
        const std::string ps = s.substr(3, caret - 3), es = s.substr(caret + 1);
        if (!detail::all_digits(ps) || !detail::all_digits(es))
            throw ParseError("bad field descriptor: " + descriptor);
        base = prime_power(std::stoll(ps), std::stoi(es));
    } else {
        throw ParseError("unknown field descriptor: " + descriptor);
    }
    for (const auto& seg : segments) {
        if (base.finite())
            throw ParseError("tower segments are only supported over Q / Qi: " + descriptor);
        FieldElement rad = base.parse(seg);
        if (rad.is_zero()) throw ParseError("zero radicand in descriptor: " + descriptor);
        if (is_square(rad))
            throw ParseError("radicand is a square, not a proper extension: " + seg);
        auto outcome = sqrt_or_extend(rad);
        base = outcome.field;
    }
    return base;
}

FieldKind FieldCtx::kind() const {
    const auto& d = D(*this);
    if (d.p) return d.e == 1 ? FieldKind::Prime : FieldKind::PrimePower;
    if (d.radicands.empty()) return FieldKind::Rational;
    if (d.radicands.size() == 1 && d.gaussian_bottom()) return FieldKind::GaussianRational;
    return FieldKind::Tower;
}

std::int64_t FieldCtx::characteristic() const { return D(*this).p; }
int FieldCtx::degree() const { return D(*this).degree(); }
std::uint64_t FieldCtx::order() const { return D(*this).order(); }

std::string FieldCtx::descriptor() const {
    const auto& d = D(*this);
    if (d.p) {
        if (d.e == 1) return "Fp:" + std::to_string(d.p);
        return "Fq:" + std::to_string(d.p) + "^" + std::to_string(d.e);
    }
    std::string out;
    std::size_t first = 0;
    if (d.gaussian_bottom()) {
        out = "Qi";
        first = 1;
    } else {
        out = "Q";
    }
    for (std::size_t lvl = first; lvl < d.radicands.size(); ++lvl)
        out += "[rt:" + d.c0_str(d.radicands[lvl].data(), static_cast<int>(lvl)) + "]";
    return out;
}

bool FieldCtx::operator==(const FieldCtx& o) const {
    if (d_ == o.d_) return true;
    if (!d_ || !o.d_) return false;
    return d_->equals(*o.d_);
}

FieldElement FieldCtx::zero() const { return integer(0); }
FieldElement FieldCtx::one() const { return integer(1); }

FieldElement FieldCtx::integer(std::int64_t n) const {
    const auto& d = D(*this);
    if (d.p) {
        std::vector<std::int64_t> c(d.e, 0);
        c[0] = detail::norm_mod(n, d.p);
        return FieldData::make_elem(*this, std::move(c), {});
    }
    std::vector<Rational> c(d.degree(), Rational(0));
    c[0] = n;
    return FieldData::make_elem(*this, {}, std::move(c));
}

FieldElement FieldCtx::rational(const Rational& r) const {
    const auto& d = D(*this);
    if (d.p) {
        const std::int64_t num =
            detail::norm_mod(static_cast<std::int64_t>(numerator(r) % d.p), d.p);
        const std::int64_t den =
            detail::norm_mod(static_cast<std::int64_t>(denominator(r) % d.p), d.p);
        if (den == 0) throw DomainError("literal denominator vanishes in F_" + std::to_string(d.p));
        std::vector<std::int64_t> c(d.e, 0);
        c[0] = num * detail::inv_mod(den, d.p) % d.p;
        return FieldData::make_elem(*this, std::move(c), {});
    }
    std::vector<Rational> c(d.degree(), Rational(0));
    c[0] = r;
    return FieldData::make_elem(*this, {}, std::move(c));
}

FieldElement FieldCtx::from_coords(const std::vector<std::int64_t>& coords) const {
    const auto& d = D(*this);
    if (!d.p) throw DomainError("residue coordinates on a characteristic-0 field");
    if (static_cast<int>(coords.size()) != d.e)
        throw DomainError("expected " + std::to_string(d.e) + " coordinates");
    std::vector<std::int64_t> c(coords);
    for (auto& x : c) x = detail::norm_mod(x, d.p);
    return FieldData::make_elem(*this, std::move(c), {});
}

FieldElement FieldCtx::from_coords(const std::vector<Rational>& coords) const {
    const auto& d = D(*this);
    if (d.p) throw DomainError("rational coordinates on a finite field");
    if (static_cast<int>(coords.size()) != d.degree())
        throw DomainError("expected " + std::to_string(d.degree()) + " coordinates");
    return FieldData::make_elem(*this, {}, coords);
}

FieldElement FieldCtx::parse(const std::string& literal) const {
    const auto& d = D(*this);
    const std::string s = detail::strip_ws(literal);
    if (s.empty()) throw ParseError("empty element literal");
    if (d.p) {
        if (s.front() == '[') {
            if (s.back() != ']') throw ParseError("unbalanced brackets in: " + literal);
            auto parts = detail::split_top_level(s.substr(1, s.size() - 2));
            if (static_cast<int>(parts.size()) != d.e)
                throw ParseError("expected " + std::to_string(d.e) + " coordinates in: " + literal);
            std::vector<std::int64_t> c(d.e);
            for (int i = 0; i < d.e; ++i) {
                const Rational r = detail::parse_rational(detail::strip_ws(parts[i]));
                const FieldElement x = FieldCtx::prime(d.p).rational(r);
                c[i] = x.finite_coords()[0];
            }
            return FieldData::make_elem(*this, std::move(c), {});
        }
        const Rational r = detail::parse_rational(s);
        return rational(r);
    }
    std::vector<Rational> c(d.degree());
    d.c0_parse(s, c.data(), static_cast<int>(d.radicands.size()));
    return FieldData::make_elem(*this, {}, std::move(c));
}

FieldElement FieldCtx::element_at(std::uint64_t idx) const {
    const auto& d = D(*this);
    if (!d.p) throw DomainError("element enumeration needs a finite field");
    const std::uint64_t q = d.order();
    if (idx >= q) throw DomainError("element index out of range");
    std::vector<std::int64_t> c(d.e, 0);
    for (int j = d.e - 1; j >= 0; --j) {
        c[j] = static_cast<std::int64_t>(idx % static_cast<std::uint64_t>(d.p));
        idx /= static_cast<std::uint64_t>(d.p);
    }
    return FieldData::make_elem(*this, std::move(c), {});
}

const std::vector<std::int64_t>& FieldCtx::modulus() const {
    const auto& d = D(*this);
    if (!d.p || d.e == 1) throw DomainError("no modulus for this field");
    return d.mod;
}

// ------------------------------ FieldElement ------------------------------

bool FieldElement::is_zero() const {
    const auto& d = D(ctx_);
    if (d.p) return std::all_of(fin_.begin(), fin_.end(), [](auto c) { return c == 0; });
    return std::all_of(rat_.begin(), rat_.end(), [](const auto& c) { return c == 0; });
}

bool FieldElement::is_one() const { return *this == ctx_.one(); }

FieldElement FieldElement::operator-() const {
    const auto& d = D(ctx_);
    if (d.p) {
        auto c = fin_;
        for (auto& x : c) x = detail::norm_mod(-x, d.p);
        return FieldData::make_elem(ctx_, std::move(c), {});
    }
    auto c = rat_;
    for (auto& x : c) x = -x;
    return FieldData::make_elem(ctx_, {}, std::move(c));
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    check_same_ctx(*this, o);
    const auto& d = D(ctx_);
    if (d.p) return FieldData::make_elem(ctx_, d.f_add(fin_, o.fin_, +1), {});
    auto c = rat_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.rat_[i];
    return FieldData::make_elem(ctx_, {}, std::move(c));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    check_same_ctx(*this, o);
    const auto& d = D(ctx_);
    if (d.p) return FieldData::make_elem(ctx_, d.f_add(fin_, o.fin_, -1), {});
    auto c = rat_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.rat_[i];
    return FieldData::make_elem(ctx_, {}, std::move(c));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    check_same_ctx(*this, o);
    const auto& d = D(ctx_);
    if (d.p) return FieldData::make_elem(ctx_, d.f_mul(fin_, o.fin_), {});
    std::vector<Rational> out(rat_.size());
    d.c0_mul(rat_.data(), o.rat_.data(), out.data(), static_cast<int>(d.radicands.size()));
    return FieldData::make_elem(ctx_, {}, std::move(out));
}

FieldElement FieldElement::inverse() const {
    const auto& d = D(ctx_);
    if (is_zero()) throw DomainError("inverse of zero");
    if (d.p) return FieldData::make_elem(ctx_, d.f_pow(fin_, d.order() - 2), {});
    std::vector<Rational> out(rat_.size());
    d.c0_inv(rat_.data(), out.data(), static_cast<int>(d.radicands.size()));
    return FieldData::make_elem(ctx_, {}, std::move(out));
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inverse(); }

FieldElement FieldElement::pow(std::uint64_t n) const {
    FieldElement r = ctx_.one(), a = *this;
    while (n > 0) {
        if (n & 1) r = r * a;
        a = a * a;
        n >>= 1;
    }
    return r;
}

bool FieldElement::operator==(const FieldElement& o) const {
    if (!valid() || !o.valid()) return valid() == o.valid();
    if (!(ctx_ == o.ctx_)) return false;
    return fin_ == o.fin_ && rat_ == o.rat_;
}

int FieldElement::cmp(const FieldElement& o) const {
    check_same_ctx(*this, o);
    if (ctx_.finite()) {
        for (std::size_t i = 0; i < fin_.size(); ++i) {
            if (fin_[i] != o.fin_[i]) return fin_[i] < o.fin_[i] ? -1 : 1;
        }
        return 0;
    }
    for (std::size_t i = 0; i < rat_.size(); ++i) {
        const int c = detail::cmp_rational_key(rat_[i], o.rat_[i]);
        if (c != 0) return c;
    }
    return 0;
}

std::string FieldElement::str() const {
    const auto& d = D(ctx_);
    if (d.p) {
        if (d.e == 1) return std::to_string(fin_[0]);
        std::string out = "[";
        for (int i = 0; i < d.e; ++i) {
            if (i) out += ",";
            out += std::to_string(fin_[i]);
        }
        return out + "]";
    }
    return d.c0_str(rat_.data(), static_cast<int>(d.radicands.size()));
}

// ------------------------------ square roots ------------------------------

namespace {

bool finite_is_square(const FieldElement& a) {
    if (a.is_zero()) return true;
    const std::uint64_t q = a.ctx().order();
    return a.pow((q - 1) / 2).is_one();
}

FieldElement canonical_root(const FieldElement& r) {
    const FieldElement n = -r;
    return r.cmp(n) <= 0 ? r : n;
}

// Tonelli-Shanks over any supported finite field; `a` must be a nonzero square.
FieldElement finite_sqrt(const FieldElement& a) {
    const FieldCtx& F = a.ctx();
    const std::uint64_t q = F.order();
    if (q % 4 == 3) return canonical_root(a.pow((q + 1) / 4));
    std::uint64_t m = q - 1;
    int s = 0;
    while (m % 2 == 0) {
        m /= 2;
        ++s;
    }
    // deterministic non-residue: ascending scan in coordinate order
    FieldElement z;
    for (std::uint64_t idx = 1; idx < q; ++idx) {
        FieldElement cand = F.element_at(idx);
        if (!finite_is_square(cand)) {
            z = cand;
            break;
        }
    }
    FieldElement c = z.pow(m);
    FieldElement t = a.pow(m);
    FieldElement r = a.pow((m + 1) / 2);
    int mm = s;
    while (!t.is_one()) {
        FieldElement tt = t;
        int i = 0;
        while (!tt.is_one()) {
            tt = tt * tt;
            ++i;
        }
        FieldElement b = c;
        for (int j = 0; j < mm - i - 1; ++j) b = b * b;
        r = r * b;
        c = b * b;
        t = t * c;
        mm = i;
    }
    return canonical_root(r);
}

}  // namespace

bool is_square(const FieldElement& a) {
    if (!a.valid()) throw DomainError("use of empty field element");
    if (a.ctx().finite()) return finite_is_square(a);
    const auto& d = a.ctx().data();
    return a.is_zero() ||
           d.c0_sqrt(a.rational_coords().data(), static_cast<int>(d.radicands.size())).has_value();
}

SqrtOutcome sqrt_or_extend(const FieldElement& a) {
    if (!a.valid()) throw DomainError("use of empty field element");
    const FieldCtx F = a.ctx();
    if (a.is_zero()) return {F.zero(), F, false};
    if (F.finite()) {
        if (finite_is_square(a)) return {finite_sqrt(a), F, false};
        const auto& d = F.data();
        const int e2 = 2 * d.e;
        if (e2 != 2 && e2 != 4)
            throw ExtensionBudgetError(
                "extension budget exceeded: F_" + std::to_string(d.p) + "^" + std::to_string(e2) +
                    " is outside the supported degrees {1,2,4}",
                {a.str()});
        FieldCtx G = FieldCtx::prime_power(d.p, e2);
        FieldElement lifted = lift(a, G);
        return {finite_sqrt(lifted), G, true};
    }
    const auto& d = F.data();
    const int levels = static_cast<int>(d.radicands.size());
    if (auto s = d.c0_sqrt(a.rational_coords().data(), levels)) {
        return {canonical_root(F.from_coords(*s)), F, false};
    }
    const int allowed = 2 + (d.gaussian_bottom() ? 1 : 0);
    if (levels + 1 > allowed) {
        std::vector<std::string> chain;
        for (int lvl = 0; lvl < levels; ++lvl)
            chain.push_back(d.c0_str(d.radicands[lvl].data(), lvl));
        chain.push_back(a.str());
        throw ExtensionBudgetError("extension budget exceeded: tower height cap reached over " +
                                       F.descriptor(),
                                   std::move(chain));
    }
    auto nd = std::make_shared<detail::FieldData>();
    nd->radicands = d.radicands;
    nd->radicands.push_back(a.rational_coords());
    FieldCtx G = detail::FieldData::wrap(nd);
    std::vector<Rational> root(G.degree(), Rational(0));
    root[F.degree()] = 1;  // the adjoined generator itself
    return {G.from_coords(root), G, true};
}

// ------------------------------- embeddings -------------------------------

namespace {

// Image of the source generator inside the target field: the lexicographically
// first root of the source modulus.
std::vector<std::int64_t> generator_image(const FieldCtx& src, const FieldCtx& tgt) {
    static std::map<std::tuple<std::int64_t, int, int>, std::vector<std::int64_t>> cache;
    static std::mutex mu;
    const auto key = std::make_tuple(src.characteristic(), src.degree(), tgt.degree());
    {
        std::lock_guard lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const auto& m = src.modulus();
    const std::uint64_t qt = tgt.order();
    for (std::uint64_t idx = 0; idx < qt; ++idx) {
        FieldElement x = tgt.element_at(idx);
        FieldElement acc = tgt.zero();
        for (auto it = m.rbegin(); it != m.rend(); ++it) acc = acc * x + tgt.integer(*it);
        if (acc.is_zero()) {
            std::lock_guard lock(mu);
            cache[key] = x.finite_coords();
            return x.finite_coords();
        }
    }
    throw DomainError("internal: modulus has no root in the extension field");
}

}  // namespace

int relative_degree(const FieldCtx& source, const FieldCtx& target) {
    if (source == target) return 1;
    if (source.finite() != target.finite())
        throw DomainError("fields of different characteristic");
    if (source.finite()) {
        if (source.characteristic() != target.characteristic() ||
            target.degree() % source.degree() != 0)
            throw DomainError("no embedding " + source.descriptor() + " -> " + target.descriptor());
        return target.degree() / source.degree();
    }
    const auto& ds = source.data();
    const auto& dt = target.data();
    if (ds.radicands.size() > dt.radicands.size() ||
        !std::equal(ds.radicands.begin(), ds.radicands.end(), dt.radicands.begin()))
        throw DomainError("no embedding " + source.descriptor() + " -> " + target.descriptor());
    return 1 << (dt.radicands.size() - ds.radicands.size());
}

FieldElement lift(const FieldElement& a, const FieldCtx& target) {
    const FieldCtx src = a.ctx();
    if (src == target) return target.finite() ? target.from_coords(a.finite_coords())
                                              : target.from_coords(a.rational_coords());
    relative_degree(src, target);  // validates the ladder
    if (src.finite()) {
        if (src.degree() == 1) {
            std::vector<std::int64_t> c(target.degree(), 0);
            c[0] = a.finite_coords()[0];
            return target.from_coords(c);
        }
        const FieldElement gen = target.from_coords(generator_image(src, target));
        FieldElement acc = target.zero();
        const auto& coords = a.finite_coords();
        for (auto it = coords.rbegin(); it != coords.rend(); ++it)
            acc = acc * gen + target.integer(*it);
        return acc;
    }
    std::vector<Rational> c(target.degree(), Rational(0));
    const auto& coords = a.rational_coords();
    std::copy(coords.begin(), coords.end(), c.begin());
    return target.from_coords(c);
}

}  // namespace flagstrata
