#include "qtc/classgroup.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <map>
#include <mutex>
#include <tuple>

#include "qtc/errors.hpp"

namespace qtc {

namespace config {
namespace {
std::atomic<long> g_cg_capacity{10000};
}
long class_group_capacity() { return g_cg_capacity.load(); }
void set_class_group_capacity(long cap) { g_cg_capacity.store(cap); }
} // namespace config

namespace {

struct BQF {
    Int a, b, c;
    bool operator==(const BQF& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const BQF& o) const {
        return std::tie(a, b, c) < std::tie(o.a, o.b, o.c);
    }
};

// (x, y) -> (p x + q y, r x + s y);  f.apply(M)(v) = f(M v)
struct Mat2 {
    Int p{1}, q{0}, r{0}, s{1};
};

Mat2 operator*(const Mat2& A, const Mat2& B) {
    return {A.p * B.p + A.q * B.r, A.p * B.q + A.q * B.s,
            A.r * B.p + A.s * B.r, A.r * B.q + A.s * B.s};
}

Int eval(const BQF& f, const Int& x, const Int& y) {
    return f.a * x * x + f.b * x * y + f.c * y * y;
}

Int disc_of(const BQF& f) { return f.b * f.b - 4 * f.a * f.c; }

// translation by m: (a, b, c) -> (a, b + 2am, f(m, 1))
void translate(BQF& f, Mat2& M, const Int& m) {
    Int b2 = f.b + 2 * f.a * m;
    Int c2 = eval(f, m, Int(1));
    f.b = b2;
    f.c = c2;
    M = M * Mat2{1, m, 0, 1};
}

// (a, b, c) -> (c, -b, a)
void flip(BQF& f, Mat2& M) {
    std::swap(f.a, f.c);
    f.b = -f.b;
    M = M * Mat2{0, -1, 1, 0};
}

// --- positive definite reduction (d < 0, a > 0) ---

void reduce_definite(BQF& f, Mat2& M) {
    for (int guard = 0;; ++guard) {
        require(guard < 100000, "definite reduction diverged");
        if (f.b > f.a || f.b <= -f.a) {
            // b' in (-a, a]: b' = b + 2 a m
            Int b2 = f.b % (2 * f.a);
            if (b2 > f.a) b2 -= 2 * f.a;
            if (b2 <= -f.a) b2 += 2 * f.a;
            translate(f, M, (b2 - f.b) / (2 * f.a));
        }
        if (f.a > f.c) {
            flip(f, M);
            continue;
        }
        break;
    }
    if (f.a == f.c && sgn(f.b) < 0) flip(f, M); // (c, -b, a) = (a, |b|, c)
    if (f.b == -f.a) translate(f, M, Int(1));
}

// --- indefinite machinery (d > 0 not a square) ---

bool is_reduced_indef(const BQF& f, const Int& s) {
    if (sgn(f.b) <= 0 || f.b > s) return false;
    Int aa = 2 * abs(f.a);
    if ((aa + f.b) * (aa + f.b) <= disc_of(f)) return false;
    if (aa <= f.b) return true;
    return (aa - f.b) * (aa - f.b) < disc_of(f);
}

// bring b into the window (s - 2|a|, s] (or (-|a|, |a|] while |a| > s)
void normalize_indef(BQF& f, Mat2& M, const Int& s) {
    Int aa = abs(f.a);
    Int hi = (aa > s) ? aa : s;
    Int w = 2 * aa;
    Int b2 = hi - ((hi - f.b) % w + w) % w;
    if (b2 != f.b) translate(f, M, (b2 - f.b) / (2 * f.a));
}

void reduce_indefinite(BQF& f, Mat2& M, const Int& s) {
    normalize_indef(f, M, s);
    for (int guard = 0; !is_reduced_indef(f, s); ++guard) {
        require(guard < 100000, "indefinite reduction diverged");
        flip(f, M);
        normalize_indef(f, M, s);
    }
}

// one cycle step on a reduced indefinite form
void rho_step(BQF& f, Mat2& M, const Int& s) {
    flip(f, M);
    normalize_indef(f, M, s);
}

BQF twist(const BQF& f) { return {-f.a, f.b, -f.c}; }

// form attached to the primitive ideal [a0, b0 + w]
BQF form_of_primitive(const QuadField& K, const Int& a0, const Int& b0) {
    Int tr = 2 * b0 + K.omega_trace();
    Int nm = b0 * b0 + K.omega_trace() * b0 + K.omega_norm();
    require(nm % a0 == 0, "ideal basis norm not divisible by a");
    return {a0, tr, nm / a0};
}

// ideal attached to a form: [|a|, c1 + w], c1 = -(b + Tr w)/2
QuadIdeal ideal_of_form(const QuadField& K, const BQF& f) {
    Int c1 = -(f.b + K.omega_trace()) / 2;
    std::array<QuadElement, 2> gens{QuadElement::from_integers(K, abs(f.a), 0),
                                    QuadElement::from_integers(K, c1, 1)};
    return QuadIdeal::from_generators(K, gens);
}

// --- abstract abelian group decomposition from a multiplication table ---

struct AbTable {
    std::vector<std::vector<int>> mult;
    int id;
    int op(int x, int y) const { return mult[size_t(x)][size_t(y)]; }
    int pw(int x, long e) const {
        int r = id, b = x;
        while (e) {
            if (e & 1) r = op(r, b);
            b = op(b, b);
            e >>= 1;
        }
        return r;
    }
    long order(int x) const {
        long n = 1;
        int y = x;
        while (y != id) {
            y = op(y, x);
            ++n;
        }
        return n;
    }
};

// generators with orders n1 >= n2 >= ..., n_{i+1} | n_i
std::vector<std::pair<int, long>> decompose_abelian(const AbTable& G) {
    size_t n = G.mult.size();
    if (n == 1) return {};
    int g = 0;
    long a = 1;
    for (size_t x = 0; x < n; ++x) {
        long o = G.order(int(x));
        if (o > a) {
            a = o;
            g = int(x);
        }
    }
    // cyclic subgroup and discrete logs within it
    std::map<int, long> cyc_log;
    {
        int y = G.id;
        for (long k = 0; k < a; ++k) {
            cyc_log[y] = k;
            y = G.op(y, g);
        }
    }
    // quotient by <g>: canonical coset representative = minimal index
    std::vector<int> coset_rep(n, -1);
    for (size_t x = 0; x < n; ++x) {
        if (coset_rep[x] != -1) continue;
        int m = int(x), y = int(x);
        std::vector<int> members;
        for (long k = 0; k < a; ++k) {
            members.push_back(y);
            if (y < m) m = y;
            y = G.op(y, g);
        }
        for (int z : members) coset_rep[size_t(z)] = m;
    }
    std::vector<int> reps;
    std::map<int, int> rep_index;
    for (size_t x = 0; x < n; ++x)
        if (coset_rep[x] == int(x)) {
            rep_index[int(x)] = int(reps.size());
            reps.push_back(int(x));
        }
    AbTable Q;
    Q.id = rep_index.at(coset_rep[size_t(G.id)]);
    Q.mult.assign(reps.size(), std::vector<int>(reps.size()));
    for (size_t i = 0; i < reps.size(); ++i)
        for (size_t j = 0; j < reps.size(); ++j)
            Q.mult[i][j] = rep_index.at(coset_rep[size_t(G.op(reps[i], reps[j]))]);

    std::vector<std::pair<int, long>> out{{g, a}};
    for (const auto& [qi, m] : decompose_abelian(Q)) {
        int x = reps[size_t(qi)];
        long j = cyc_log.at(G.pw(x, m)); // x^m = g^j
        require(j % m == 0, "abelian decomposition: lift obstruction");
        long shift = ((-(j / m)) % a + a) % a;
        int adjusted = G.op(x, G.pw(g, shift));
        require(G.order(adjusted) == m, "abelian decomposition: wrong lifted order");
        out.emplace_back(adjusted, m);
    }
    return out;
}

} // namespace

struct ClassGroup::Impl {
    QuadField K = QuadField::of(Int(5));
    Int sqrt_d;                       // isqrt(d) for d > 0
    std::map<BQF, int> form_index;    // reduced form -> index
    std::vector<int> cycle_of;        // form index -> cycle id
    int n_cycles = 0;
    std::vector<int> twist_cycle;     // cycle id -> cycle id of twisted forms
    std::vector<int> orbit_of_cycle;  // cycle id -> class index
    int n_orbits = 0;
    std::vector<QuadIdeal> orbit_ideal;
    int identity_orbit = 0;
    AbTable table;
    std::vector<int> gen_orbits;
    std::vector<long> gen_orders;
    std::map<int, std::vector<long>> dlog_of_orbit;

    BQF reduce(BQF f, Mat2& M) const {
        if (sgn(K.disc()) < 0)
            reduce_definite(f, M);
        else
            reduce_indefinite(f, M, sqrt_d);
        return f;
    }

    int class_of_ideal(const QuadIdeal& I) const {
        Int a0 = I.a() / I.c();
        Int b0 = I.b() / I.c();
        BQF f = form_of_primitive(K, a0, b0);
        Mat2 M;
        BQF r = reduce(f, M);
        auto it = form_index.find(r);
        require(it != form_index.end(), "reduced form missing from enumeration");
        return orbit_of_cycle[size_t(cycle_of[size_t(it->second)])];
    }
};

namespace {

std::vector<BQF> enumerate_reduced_forms(const QuadField& K) {
    const Int& d = K.disc();
    std::vector<BQF> out;
    auto coprime3 = [](const Int& a, const Int& b, const Int& c) {
        Int g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        return g == 1;
    };
    if (sgn(d) < 0) {
        // |b| <= a <= c, b = d mod 2, b >= 0 when |b| = a or a = c
        Int ad = -d;
        for (Int b = mpz_odd_p(d.get_mpz_t()) ? 1 : 0; 3 * b * b <= ad; b += 2) {
            Int ac4 = b * b + ad;
            if (ac4 % 4 != 0) continue;
            Int ac = ac4 / 4;
            for (const Int& a : divisors(ac)) {
                if (a * a > ac) break;
                if (a < b || a < 1) continue;
                Int c = ac / a;
                if (!coprime3(a, b, c)) continue;
                out.push_back({a, b, c});
                if (sgn(b) > 0 && b < a && a < c) out.push_back({a, -b, c});
            }
        }
    } else {
        Int s = isqrt(d);
        for (Int b = mpz_odd_p(d.get_mpz_t()) ? 1 : 2; b <= s; b += 2) {
            Int ac4 = d - b * b;
            if (ac4 % 4 != 0) continue;
            Int A = ac4 / 4; // = -a*c > 0
            for (const Int& a : divisors(A)) {
                Int c = -(A / a);
                BQF f{a, b, c};
                if (!is_reduced_indef(f, s)) continue;
                if (!coprime3(a, b, c)) continue;
                out.push_back(f);
                out.push_back({-a, b, -c});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct CacheKey {
    Int d;
    bool operator<(const CacheKey& o) const { return d < o.d; }
};

} // namespace

std::shared_ptr<const ClassGroup> ClassGroup::of(const QuadField& K) {
    static std::mutex mu;
    static std::map<Int, std::shared_ptr<const ClassGroup>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(K.disc());
        if (it != cache.end()) return it->second;
    }
    if (abs(K.disc()) > config::class_group_capacity())
        throw capacity_error("class_group: |disc| exceeds capacity " +
                             std::to_string(config::class_group_capacity()));

    auto cg = std::shared_ptr<ClassGroup>(new ClassGroup());
    auto impl = std::make_shared<Impl>();
    impl->K = K;
    if (K.is_real()) impl->sqrt_d = isqrt(K.disc());

    // reduced forms and cycles
    std::vector<BQF> forms = enumerate_reduced_forms(K);
    for (size_t i = 0; i < forms.size(); ++i) impl->form_index[forms[i]] = int(i);
    impl->cycle_of.assign(forms.size(), -1);
    if (K.is_real()) {
        for (size_t i = 0; i < forms.size(); ++i) {
            if (impl->cycle_of[i] != -1) continue;
            int cid = impl->n_cycles++;
            BQF f = forms[i];
            Mat2 M;
            for (int guard = 0;; ++guard) {
                require(guard < 1000000, "cycle walk diverged");
                impl->cycle_of[size_t(impl->form_index.at(f))] = cid;
                rho_step(f, M, impl->sqrt_d);
                require(impl->form_index.count(f) == 1, "rho left the reduced set");
                if (f == forms[i]) break;
            }
        }
        impl->twist_cycle.assign(size_t(impl->n_cycles), -1);
        for (size_t i = 0; i < forms.size(); ++i) {
            int tc = impl->cycle_of[size_t(impl->form_index.at(twist(forms[i])))];
            impl->twist_cycle[size_t(impl->cycle_of[i])] = tc;
        }
    } else {
        for (size_t i = 0; i < forms.size(); ++i) impl->cycle_of[i] = int(i);
        impl->n_cycles = int(forms.size());
        impl->twist_cycle.resize(forms.size());
        for (size_t i = 0; i < forms.size(); ++i) impl->twist_cycle[i] = int(i);
    }

    // wide classes = cycles modulo twist
    impl->orbit_of_cycle.assign(size_t(impl->n_cycles), -1);
    std::vector<int> orbit_cycle; // orbit -> canonical cycle
    for (int c = 0; c < impl->n_cycles; ++c) {
        if (impl->orbit_of_cycle[size_t(c)] != -1) continue;
        int o = impl->n_orbits++;
        impl->orbit_of_cycle[size_t(c)] = o;
        impl->orbit_of_cycle[size_t(impl->twist_cycle[size_t(c)])] = o;
        orbit_cycle.push_back(c);
    }
    cg->h_ = impl->n_orbits;

    // representative ideal per class (from any form on the canonical cycle)
    for (int o = 0; o < impl->n_orbits; ++o) {
        int cid = orbit_cycle[size_t(o)];
        size_t fi = 0;
        while (impl->cycle_of[fi] != cid) ++fi;
        impl->orbit_ideal.push_back(ideal_of_form(K, forms[fi]));
    }
    for (int o = 0; o < impl->n_orbits; ++o)
        require(impl->class_of_ideal(impl->orbit_ideal[size_t(o)]) == o,
                "form/ideal correspondence broke");
    impl->identity_orbit = impl->class_of_ideal(QuadIdeal::ring_of_integers(K));

    // multiplication table via ideal products
    size_t n = size_t(impl->n_orbits);
    impl->table.mult.assign(n, std::vector<int>(n));
    impl->table.id = impl->identity_orbit;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
            int prod = impl->class_of_ideal(impl->orbit_ideal[i] * impl->orbit_ideal[j]);
            impl->table.mult[i][j] = prod;
            impl->table.mult[j][i] = prod;
        }

    // structure + discrete log table, with a full covering certificate
    auto gens = decompose_abelian(impl->table);
    Int prod = 1;
    for (const auto& [go, od] : gens) {
        impl->gen_orbits.push_back(go);
        impl->gen_orders.push_back(od);
        cg->divisors_.push_back(Int(od));
        cg->gen_ideals_.push_back(impl->orbit_ideal[size_t(go)]);
        prod *= Int(od);
    }
    require(prod == cg->h_, "decomposition order mismatch");
    {
        std::vector<long> exps(gens.size(), 0);
        size_t count = 0;
        for (;;) {
            int e = impl->table.id;
            for (size_t i = 0; i < gens.size(); ++i)
                e = impl->table.op(e, impl->table.pw(gens[i].first, exps[i]));
            require(impl->dlog_of_orbit.emplace(e, exps).second,
                    "decomposition is not a direct sum");
            ++count;
            size_t i = 0;
            while (i < gens.size()) {
                if (++exps[i] < gens[i].second) break;
                exps[i] = 0;
                ++i;
            }
            if (i == gens.size()) break;
        }
        require(count == n, "decomposition misses classes");
    }

    cg->K_ = K;
    cg->impl_ = impl;
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(K.disc(), cg);
    return it->second;
}

std::vector<long> ClassGroup::dlog(const QuadIdeal& I) const {
    return impl_->dlog_of_orbit.at(impl_->class_of_ideal(I));
}

bool ClassGroup::is_principal(const QuadIdeal& I) const {
    return impl_->class_of_ideal(I) == impl_->identity_orbit;
}

std::optional<QuadElement> ClassGroup::principal_generator(const QuadIdeal& I) const {
    const QuadField& K = K_;
    Int a0 = I.a() / I.c();
    Int b0 = I.b() / I.c();
    BQF Q = form_of_primitive(K, a0, b0);
    Mat2 M;
    BQF R = impl_->reduce(Q, M);
    auto emit = [&](const Mat2& T) {
        // column (p, r) of T represents Q(p, r) = +-1
        QuadElement mu = QuadElement::from_integers(K, a0, 0) * Rat(T.p) +
                         QuadElement::from_integers(K, b0, 1) * Rat(T.r);
        mu = mu * Rat(I.c());
        require(QuadIdeal::principal(mu) == I, "generator extraction failed");
        return mu;
    };
    if (!K.is_real()) {
        if (R.a != 1) return std::nullopt;
        return emit(M);
    }
    BQF f = R;
    Mat2 W = M;
    for (int guard = 0;; ++guard) {
        require(guard < 1000000, "generator cycle walk diverged");
        if (f.a == 1 || f.a == -1) return emit(W);
        rho_step(f, W, impl_->sqrt_d);
        if (f == R) return std::nullopt;
    }
}

std::optional<QuadIdeal> ClassGroup::sqrt_class_cofactor(const QuadIdeal& a) const {
    std::vector<long> v = dlog(a);
    QuadIdeal c = QuadIdeal::ring_of_integers(K_);
    for (size_t i = 0; i < v.size(); ++i) {
        long n = impl_->gen_orders[i];
        long vi = v[i];
        long x;
        if (n % 2 == 1) {
            // 2 invertible mod n
            long inv2 = (n + 1) / 2;
            x = long((__int128(((n - vi) % n)) * inv2) % n);
        } else {
            if (vi % 2 != 0) return std::nullopt;
            x = ((-vi / 2) % n + n) % n;
        }
        if (x) c = c * gen_ideals_[i].pow(unsigned(x));
    }
    return c;
}

int ClassGroup::two_rank() const {
    int t = 0;
    for (const Int& n : divisors_)
        if (mpz_even_p(n.get_mpz_t())) ++t;
    return t;
}

std::vector<QuadIdeal> ClassGroup::two_torsion_ideals() const {
    std::vector<QuadIdeal> out;
    for (size_t i = 0; i < divisors_.size(); ++i)
        if (mpz_even_p(divisors_[i].get_mpz_t()))
            out.push_back(gen_ideals_[i].pow(unsigned(impl_->gen_orders[i] / 2)));
    return out;
}

// --- units ---

QuadElement fundamental_unit(const QuadField& K) {
    require(K.is_real(), "fundamental_unit: imaginary field");
    const Int& d = K.disc();
    Int s = isqrt(d);
    // continued fraction of w = (t + sqrt d)/2; states alpha = (P + sqrt d)/Q
    Int P = K.omega_trace(), Q = 2;
    QuadElement gamma = QuadElement::one(K);
    std::map<std::pair<Int, Int>, QuadElement> seen;
    for (int guard = 0;; ++guard) {
        require(guard < 10000000, "unit CF walk diverged");
        auto key = std::make_pair(P, Q);
        auto it = seen.find(key);
        if (it != seen.end()) {
            QuadElement u = gamma / it->second; // in (0,1); eps = 1/u
            QuadElement eps = u.inverse();
            require(eps.is_integral(), "unit not integral");
            Rat nm = eps.norm();
            require(nm == Rat(1) || nm == Rat(-1), "unit has wrong norm");
            require(eps.embedding_sign() > 0, "unit not positive");
            require((eps - QuadElement::one(K)).embedding_sign() > 0, "unit not > 1");
            return eps;
        }
        seen.emplace(key, gamma);
        // a = floor((P + sqrt d)/Q)
        Int a;
        if (sgn(Q) > 0) {
            mpz_fdiv_q(a.get_mpz_t(), Int(P + s).get_mpz_t(), Q.get_mpz_t());
        } else {
            Int qa = -Q;
            mpz_fdiv_q(a.get_mpz_t(), Int(P + s).get_mpz_t(), qa.get_mpz_t());
            a = -a - 1;
        }
        Int Pn = a * Q - P;
        // alpha - a = (-Pn + sqrt d)/Q = ((-Pn - t) + 2 w)/Q
        gamma = gamma * QuadElement(K, Rat(-Pn - K.omega_trace(), Q), Rat(2, Q));
        Int Qn = (d - Pn * Pn) / Q;
        require(Qn * Q == d - Pn * Pn, "CF state not integral");
        P = Pn;
        Q = Qn;
    }
}

UnitGroup UnitGroup::of(const QuadField& K) {
    UnitGroup u{K, 2, std::nullopt};
    if (K.is_real()) {
        u.eps = fundamental_unit(K);
    } else if (K.disc() == -4) {
        u.torsion_order = 4;
    } else if (K.disc() == -3) {
        u.torsion_order = 6;
    }
    return u;
}

// --- 2-Selmer group ---

Selmer2 Selmer2::of(const QuadField& K) {
    Selmer2 S{K, {}};
    if (K.is_real()) {
        S.basis.push_back(-QuadElement::one(K));
        S.basis.push_back(fundamental_unit(K));
    } else if (K.disc() == -3 || K.disc() == -4) {
        S.basis.push_back(QuadElement::omega(K)); // torsion generator mod squares
    } else {
        S.basis.push_back(-QuadElement::one(K));
    }
    auto cg = ClassGroup::of(K);
    for (const QuadIdeal& b : cg->two_torsion_ideals()) {
        auto mu = cg->principal_generator(b * b);
        require(mu.has_value(), "2-torsion square is not principal");
        S.basis.push_back(*mu);
    }
    size_t expected = size_t(K.is_real() ? 2 : 1) + size_t(cg->two_rank());
    require(S.basis.size() == expected, "Selmer rank law violated");
    // independence: no nonempty sub-product is a square
    for (unsigned mask = 1; mask < (1u << S.basis.size()); ++mask)
        require(!is_square_in_field(S.element(mask)), "Selmer basis not independent");
    return S;
}

QuadElement Selmer2::element(unsigned mask) const {
    QuadElement e = QuadElement::one(K);
    for (size_t i = 0; i < basis.size(); ++i)
        if (mask & (1u << i)) e = e * basis[i];
    return e;
}

} // namespace qtc
