#include "qtc/int_util.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace qtc {

Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(const Int& n) {
    if (sgn(n) < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

bool is_square(const Int& n, Int& root) {
    if (!is_square(n)) return false;
    root = isqrt(n);
    return true;
}

std::optional<Rat> rat_sqrt(const Rat& q) {
    if (sgn(q) < 0) return std::nullopt;
    Int nr, dr;
    if (!is_square(q.get_num(), nr) || !is_square(q.get_den(), dr)) return std::nullopt;
    return Rat(nr, dr);
}

bool is_prime(const Int& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

int kronecker(const Int& a, const Int& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

namespace {

const std::vector<uint32_t>& small_primes() {
    static const std::vector<uint32_t> primes = [] {
        const uint32_t limit = 1u << 16;
        std::vector<bool> comp(limit, false);
        std::vector<uint32_t> ps;
        for (uint32_t i = 2; i < limit; ++i) {
            if (comp[i]) continue;
            ps.push_back(i);
            for (uint64_t j = uint64_t(i) * i; j < limit; j += i) comp[j] = true;
        }
        return ps;
    }();
    return primes;
}

Int rho_find_factor(const Int& n) {
    // Brent's variant; n odd composite, no factor < 2^16.
    for (unsigned c = 1;; ++c) {
        Int y = 2, r = 1, q = 1, g = 1, x, ys;
        while (g == 1) {
            x = y;
            for (Int i = 0; i < r; ++i) y = (y * y + c) % n;
            Int k = 0;
            while (k < r && g == 1) {
                ys = y;
                Int lim = r - k;
                if (lim > 128) lim = 128;
                for (Int i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    Int diff = x - y;
                    if (sgn(diff) < 0) diff = -diff;
                    q = q * diff % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += 128;
            }
            r *= 2;
        }
        if (g == n) {
            // backtrack
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % n;
                Int diff = x - ys;
                if (sgn(diff) < 0) diff = -diff;
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (g != n) return g;
    }
}

void factor_rec(Int n, std::vector<Int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    Int f = rho_find_factor(n);
    factor_rec(f, out);
    factor_rec(n / f, out);
}

} // namespace

std::vector<std::pair<Int, unsigned>> factor(const Int& n) {
    if (sgn(n) == 0) throw std::domain_error("factor: zero");
    Int m = abs(n);
    std::vector<std::pair<Int, unsigned>> result;
    for (uint32_t p : small_primes()) {
        if (m == 1) break;
        if (Int(p) * p > m) break;
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
                m /= p;
                ++e;
            }
            result.emplace_back(Int(p), e);
        }
    }
    if (m > 1) {
        if (is_prime(m)) {
            result.emplace_back(m, 1);
        } else {
            std::vector<Int> rest;
            factor_rec(m, rest);
            std::sort(rest.begin(), rest.end());
            for (size_t i = 0; i < rest.size();) {
                size_t j = i;
                while (j < rest.size() && rest[j] == rest[i]) ++j;
                result.emplace_back(rest[i], unsigned(j - i));
                i = j;
            }
        }
    }
    std::sort(result.begin(), result.end());
    return result;
}

std::vector<Int> divisors(const Int& n) {
    auto fac = factor(n);
    std::vector<Int> divs{1};
    for (const auto& [p, e] : fac) {
        size_t sz = divs.size();
        Int pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

bool is_squarefree(const Int& n) {
    if (sgn(n) == 0) return false;
    for (const auto& [p, e] : factor(n))
        if (e > 1) return false;
    return true;
}

Int sqrt_mod_p(const Int& a, const Int& p) {
    Int a0 = a % p;
    if (sgn(a0) < 0) a0 += p;
    if (a0 == 0) return 0;
    if (p == 2) return a0;
    // write p-1 = q * 2^s
    Int q = p - 1;
    unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(q.get_mpz_t(), q.get_mpz_t(), s);
    // find non-residue z
    Int z = 2;
    while (kronecker(z, p) != -1) ++z;
    Int m{long(s)}, c, t, r, tmp;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    mpz_powm(t.get_mpz_t(), a0.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    tmp = (q + 1) / 2;
    mpz_powm(r.get_mpz_t(), a0.get_mpz_t(), tmp.get_mpz_t(), p.get_mpz_t());
    while (t != 1) {
        Int tt = t;
        long i = 0;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
        }
        Int b = c;
        for (long j = 0; j < m.get_si() - i - 1; ++j) b = b * b % p;
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return r;
}

bool is_fundamental_discriminant(const Int& d) {
    if (d == 0 || d == 1) return false;
    Int r = d % 4;
    if (sgn(r) < 0) r += 4;
    if (r == 1) return is_squarefree(d);
    if (r != 0) return false;
    Int m = d / 4;
    Int rm = m % 4;
    if (sgn(rm) < 0) rm += 4;
    if (rm != 2 && rm != 3) return false;
    return is_squarefree(m);
}

std::vector<Int> fundamental_discriminants(const Int& bound) {
    std::vector<Int> out;
    if (bound < 3) return out;
    unsigned long b = bound.get_ui();
    // squarefree flags up to b via sieve on p^2 multiples
    std::vector<uint8_t> sf(b + 1, 1);
    for (unsigned long p = 2; p * p <= b; ++p)
        for (unsigned long j = p * p; j <= b; j += p * p) sf[j] = 0;
    auto push_if = [&](long n) {
        // candidates for |d| = n; ascending sign order: negative first
        for (int sign : {-1, +1}) {
            Int d = Int(sign) * Int(n);
            Int r = d % 4;
            if (sgn(r) < 0) r += 4;
            if (r == 1) {
                if (sf[n]) out.push_back(d);
            } else if (r == 0) {
                unsigned long m = n / 4;
                Int ms = d / 4;
                Int rm = ms % 4;
                if (sgn(rm) < 0) rm += 4;
                if ((rm == 2 || rm == 3) && sf[m]) out.push_back(d);
            }
        }
    };
    for (unsigned long n = 3; n <= b; ++n) push_if(long(n));
    return out;
}

Int squarefree_part(const Int& n) {
    Int out = 1;
    for (const auto& [p, e] : factor(n))
        if (e & 1u) out *= p;
    return out;
}

Int discriminant_of_sqrt(const Int& m) {
    Int r = m % 4;
    if (sgn(r) < 0) r += 4;
    return r == 1 ? m : 4 * m;
}

} // namespace qtc
