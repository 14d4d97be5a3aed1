#include "btg/polynomial.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace btg {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t reduce_signed(std::int64_t c, std::uint64_t p) {
    const auto sp = static_cast<std::int64_t>(p);
    std::int64_t r = c % sp;
    if (r < 0) r += sp;
    return static_cast<std::uint64_t>(r);
}

void require_same_field(const FpPoly& x, const FpPoly& y) {
    if (x.prime() != y.prime()) throw std::invalid_argument("polynomials over different prime fields");
}

}  // namespace

std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e > 0) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) throw std::domain_error("inverse of zero in F_p");
    // p is prime: Fermat.
    return mod_pow(a, p - 2, p);
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = mod_pow(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

FpPoly::FpPoly(std::uint64_t p, std::vector<std::int64_t> coeffs) : p_(p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
    c_.reserve(coeffs.size());
    for (auto c : coeffs) c_.push_back(reduce_signed(c, p));
    strip();
}

FpPoly FpPoly::constant(std::uint64_t p, std::int64_t c) { return FpPoly(p, {c}); }

FpPoly FpPoly::monomial(std::uint64_t p, std::uint64_t c, std::size_t degree) {
    FpPoly r(p, {});
    r.c_.assign(degree + 1, 0);
    r.c_[degree] = c % p;
    r.strip();
    return r;
}

FpPoly FpPoly::variable(std::uint64_t p) { return monomial(p, 1, 1); }

void FpPoly::strip() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly FpPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(mod_inverse(lead(), p_));
}

FpPoly FpPoly::reversed() const {
    FpPoly r = *this;
    std::reverse(r.c_.begin(), r.c_.end());
    r.strip();
    return r;
}

FpPoly FpPoly::scaled(std::uint64_t s) const {
    FpPoly r = *this;
    s %= p_;
    for (auto& c : r.c_) c = mulmod(c, s, p_);
    r.strip();
    return r;
}

FpPoly FpPoly::operator-() const {
    FpPoly r = *this;
    for (auto& c : r.c_) c = c == 0 ? 0 : p_ - c;
    return r;
}

FpPoly operator+(const FpPoly& x, const FpPoly& y) {
    require_same_field(x, y);
    FpPoly r = x.c_.size() >= y.c_.size() ? x : y;
    const FpPoly& s = x.c_.size() >= y.c_.size() ? y : x;
    for (std::size_t i = 0; i < s.c_.size(); ++i) {
        r.c_[i] = (r.c_[i] + s.c_[i]) % r.p_;
    }
    r.strip();
    return r;
}

FpPoly operator-(const FpPoly& x, const FpPoly& y) { return x + (-y); }

FpPoly operator*(const FpPoly& x, const FpPoly& y) {
    require_same_field(x, y);
    FpPoly r;
    r.p_ = x.p_;
    if (x.is_zero() || y.is_zero()) return r;
    r.c_.assign(x.c_.size() + y.c_.size() - 1, 0);
    for (std::size_t i = 0; i < x.c_.size(); ++i) {
        if (x.c_[i] == 0) continue;
        for (std::size_t j = 0; j < y.c_.size(); ++j) {
            r.c_[i + j] = (r.c_[i + j] + mulmod(x.c_[i], y.c_[j], r.p_)) % r.p_;
        }
    }
    r.strip();
    return r;
}

bool operator<(const FpPoly& x, const FpPoly& y) {
    if (x.c_.size() != y.c_.size()) return x.c_.size() < y.c_.size();
    return std::lexicographical_compare(x.c_.rbegin(), x.c_.rend(), y.c_.rbegin(), y.c_.rend());
}

std::string FpPoly::to_string(char var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = degree(); i >= 0; --i) {
        const auto c = c_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || c != 1) os << c;
        if (i >= 1) os << var;
        if (i >= 2) os << '^' << i;
    }
    return os.str();
}

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
    require_same_field(a, b);
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    const auto p = a.p_;
    FpPoly q;
    q.p_ = p;
    FpPoly r = a;
    if (r.degree() < b.degree()) return {q, r};
    const auto inv_lead = mod_inverse(b.lead(), p);
    q.c_.assign(static_cast<std::size_t>(r.degree() - b.degree() + 1), 0);
    const auto db = static_cast<std::size_t>(b.degree());
    while (!r.is_zero() && r.degree() >= b.degree()) {
        const auto shift = static_cast<std::size_t>(r.degree()) - db;
        const auto f = mulmod(r.lead(), inv_lead, p);
        q.c_[shift] = f;
        for (std::size_t i = 0; i <= db; ++i) {
            const auto sub = mulmod(f, b.c_[i], p);
            r.c_[shift + i] = (r.c_[shift + i] + p - sub) % p;
        }
        r.strip();
    }
    q.strip();
    return {q, r};
}

FpPoly operator/(const FpPoly& a, const FpPoly& b) { return divmod(a, b).first; }
FpPoly operator%(const FpPoly& a, const FpPoly& b) { return divmod(a, b).second; }

FpPoly gcd(const FpPoly& a, const FpPoly& b) {
    FpPoly x = a, y = b;
    while (!y.is_zero()) {
        FpPoly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

std::tuple<FpPoly, FpPoly, FpPoly> xgcd(const FpPoly& a, const FpPoly& b) {
    const auto p = a.prime();
    FpPoly r0 = a, r1 = b;
    FpPoly s0 = FpPoly::constant(p, 1), s1 = FpPoly::constant(p, 0);
    FpPoly u0 = FpPoly::constant(p, 0), u1 = FpPoly::constant(p, 1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::exchange(r1, r);
        s0 = std::exchange(s1, s0 - q * s1);
        u0 = std::exchange(u1, u0 - q * u1);
    }
    if (r0.is_zero()) return {r0, s0, u0};
    const auto inv = mod_inverse(r0.lead(), p);
    return {r0.scaled(inv), s0.scaled(inv), u0.scaled(inv)};
}

FpPoly powmod(FpPoly base, std::uint64_t e, const FpPoly& modulus) {
    FpPoly result = FpPoly::constant(modulus.prime(), 1) % modulus;
    base = base % modulus;
    while (e > 0) {
        if (e & 1) result = (result * base) % modulus;
        base = (base * base) % modulus;
        e >>= 1;
    }
    return result;
}

FpPoly invmod(const FpPoly& a, const FpPoly& m) {
    auto [g, s, u] = xgcd(a % m, m);
    if (!g.is_one()) throw std::domain_error("polynomial not invertible modulo " + m.to_string());
    return s % m;
}

namespace {

// t^(p^k) mod f, by k repeated p-th powers.
FpPoly frobenius_power(const FpPoly& x, std::uint64_t k, const FpPoly& f) {
    FpPoly r = x % f;
    for (std::uint64_t i = 0; i < k; ++i) r = powmod(r, f.prime(), f);
    return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Splits a squarefree product of irreducibles of common degree d.
void equal_degree_split(const FpPoly& f, std::uint64_t d, std::mt19937_64& rng, std::vector<FpPoly>& out) {
    const auto n = static_cast<std::uint64_t>(f.degree());
    if (n == d) {
        out.push_back(f.monic());
        return;
    }
    const auto p = f.prime();
    std::uniform_int_distribution<std::uint64_t> coeff(0, p - 1);
    for (;;) {
        std::vector<std::int64_t> raw(n);
        for (auto& c : raw) c = static_cast<std::int64_t>(coeff(rng));
        FpPoly a(p, raw);
        if (a.degree() < 1) continue;
        FpPoly g = gcd(a, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, d, rng, out);
            equal_degree_split(f / g, d, rng, out);
            return;
        }
        FpPoly probe;
        if (p == 2) {
            // Absolute trace of a from F_{2^d} down to F_2.
            FpPoly term = a % f;
            probe = term;
            for (std::uint64_t i = 1; i < d; ++i) {
                term = (term * term) % f;
                probe = probe + term;
            }
        } else {
            // a^((p^d - 1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p-1)/2).
            FpPoly norm = FpPoly::constant(p, 1);
            FpPoly conj = a % f;
            for (std::uint64_t i = 0; i < d; ++i) {
                norm = (norm * conj) % f;
                conj = powmod(conj, p, f);
            }
            probe = powmod(norm, (p - 1) / 2, f) - FpPoly::constant(p, 1);
        }
        g = gcd(probe, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, d, rng, out);
            equal_degree_split(f / g, d, rng, out);
            return;
        }
    }
}

}  // namespace

bool is_irreducible(const FpPoly& f) {
    if (f.degree() < 1) return false;
    const auto n = static_cast<std::uint64_t>(f.degree());
    const FpPoly t = FpPoly::variable(f.prime());
    if (frobenius_power(t, n, f) != t % f) return false;
    for (auto q : prime_factors(n)) {
        FpPoly h = frobenius_power(t, n / q, f) - t;
        if (!gcd(h, f).is_one()) return false;
    }
    return true;
}

long multiplicity(FpPoly f, const FpPoly& pi) {
    if (f.is_zero()) throw std::domain_error("multiplicity of zero polynomial");
    long k = 0;
    for (;;) {
        auto [q, r] = divmod(f, pi);
        if (!r.is_zero()) return k;
        f = std::move(q);
        ++k;
    }
}

std::vector<FpPoly> irreducible_divisors(const FpPoly& f_in) {
    if (f_in.is_zero()) throw std::domain_error("irreducible divisors of zero polynomial");
    std::vector<FpPoly> out;
    FpPoly f = f_in.monic();
    const auto p = f.prime();
    const FpPoly t = FpPoly::variable(p);
    std::mt19937_64 rng(0x5eedULL);
    FpPoly frob = t;
    for (std::uint64_t d = 1; f.degree() >= 1; ++d) {
        if (static_cast<std::uint64_t>(f.degree()) < 2 * d) {
            // Every remaining factor has degree >= d, so f is a single irreducible.
            out.push_back(f);
            break;
        }
        frob = powmod(frob, p, f);
        FpPoly g = gcd(frob - t, f);
        if (g.degree() >= 1) {
            equal_degree_split(g, d, rng, out);
            while (f.degree() >= 1) {
                FpPoly c = gcd(f, g);
                if (c.degree() < 1) break;
                f = f / c;
            }
            frob = frob % (f.degree() >= 1 ? f : FpPoly::constant(p, 1));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace btg
