#include "riesz/sphere_poly.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/rational_adaptor.hpp>

#include "riesz/rng.hpp"

namespace riesz {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;
constexpr int kMaxIntegralDegree = 200;
constexpr int kExactRationalFrom = 61;

// cached lgamma(k) for integer arguments
double lgamma_int(int k) {
    static std::vector<double> table;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (static_cast<int>(table.size()) <= k) {
        const std::size_t old = table.size();
        table.resize(std::max<std::size_t>(k + 1, 512));
        for (std::size_t i = old; i < table.size(); ++i)
            table[i] = std::lgamma(static_cast<double>(i));
    }
    return table[k];
}

}  // namespace

std::vector<MultiIndex> enumerate_multi_indices(int n, int w) {
    std::vector<MultiIndex> out;
    MultiIndex cur(n, 0);
    // recursive fill, lexicographic in the leading entries
    auto rec = [&](auto&& self, int pos, int rest) -> void {
        if (pos == n - 1) {
            cur[pos] = rest;
            out.push_back(cur);
            return;
        }
        for (int e = rest; e >= 0; --e) {
            cur[pos] = e;
            self(self, pos + 1, rest - e);
        }
    };
    if (n <= 0) throw std::invalid_argument("enumerate_multi_indices: n must be positive");
    rec(rec, 0, w);
    return out;
}

double monomial_sup(const MultiIndex& gamma) {
    const long long total = weight(gamma);
    if (total == 0) return 1.0;
    double log_sup = 0.0;
    for (int e : gamma) {
        if (e < 0) throw std::invalid_argument("monomial_sup: negative exponent");
        if (e > 0)
            log_sup += 0.5 * static_cast<double>(e) *
                       (std::log(static_cast<double>(e)) - std::log(static_cast<double>(total)));
    }
    return std::exp(log_sup);
}

SpherePoly::SpherePoly(int dim) : n(dim) {
    if (dim < 1 || dim > 8) throw std::invalid_argument("SpherePoly: dimension must be in [1, 8]");
}

int SpherePoly::exponent_bits(int dim) { return 64 / (2 * dim); }
int SpherePoly::max_exponent(int dim) { return (1 << exponent_bits(dim)) - 1; }

std::uint64_t SpherePoly::encode(const MultiIndex& alpha, const MultiIndex& beta) const {
    if (static_cast<int>(alpha.size()) != n || static_cast<int>(beta.size()) != n)
        throw std::invalid_argument("SpherePoly: multi-index length must equal the dimension");
    const int w = exponent_bits(n);
    const int cap = max_exponent(n);
    std::uint64_t key = 0;
    for (int i = 0; i < n; ++i) {
        if (alpha[i] < 0 || beta[i] < 0) throw std::invalid_argument("SpherePoly: negative exponent");
        if (alpha[i] > cap || beta[i] > cap)
            throw std::overflow_error("SpherePoly: exponent exceeds the packed-key cap for n=" +
                                      std::to_string(n));
        key |= static_cast<std::uint64_t>(alpha[i]) << (w * i);
        key |= static_cast<std::uint64_t>(beta[i]) << (w * (n + i));
    }
    return key;
}

void SpherePoly::decode(std::uint64_t key, int* alpha, int* beta) const {
    const int w = exponent_bits(n);
    const std::uint64_t mask = (w == 32) ? 0xffffffffull : ((1ull << w) - 1);
    for (int i = 0; i < n; ++i) {
        alpha[i] = static_cast<int>((key >> (w * i)) & mask);
        beta[i] = static_cast<int>((key >> (w * (n + i))) & mask);
    }
}

SpherePoly SpherePoly::constant(int dim, Complex c) {
    SpherePoly p(dim);
    if (c != Complex{0.0, 0.0}) p.terms.emplace(0, c);
    return p;
}

SpherePoly SpherePoly::coordinate(int dim, int i) {
    SpherePoly p(dim);
    MultiIndex a(dim, 0), b(dim, 0);
    a[i] = 1;
    p.add_term(a, b, {1.0, 0.0});
    return p;
}

SpherePoly SpherePoly::monomial(int dim, const MultiIndex& alpha, const MultiIndex& beta, Complex c) {
    SpherePoly p(dim);
    p.add_term(alpha, beta, c);
    return p;
}

void SpherePoly::add_term(const MultiIndex& alpha, const MultiIndex& beta, Complex c) {
    add_key(encode(alpha, beta), c);
}

void SpherePoly::add_key(std::uint64_t key, Complex c) {
    auto [it, inserted] = terms.emplace(key, c);
    if (!inserted) {
        it->second += c;
        // exact cancellations happen in laplacians and subtractions
        if (it->second == Complex{0.0, 0.0}) terms.erase(it);
    }
}

Complex SpherePoly::coeff(const MultiIndex& alpha, const MultiIndex& beta) const {
    auto it = terms.find(encode(alpha, beta));
    return it == terms.end() ? Complex{0.0, 0.0} : it->second;
}

long long SpherePoly::total_degree() const {
    int a[8], b[8];
    long long deg = 0;
    for (const auto& [key, c] : terms) {
        decode(key, a, b);
        long long d = 0;
        for (int i = 0; i < n; ++i) d += a[i] + b[i];
        deg = std::max(deg, d);
    }
    return deg;
}

bool SpherePoly::is_holomorphic() const {
    int a[8], b[8];
    for (const auto& [key, c] : terms) {
        decode(key, a, b);
        for (int i = 0; i < n; ++i)
            if (b[i] != 0) return false;
    }
    return true;
}

bool SpherePoly::is_homogeneous(Bidegree* bd) const {
    int a[8], b[8];
    bool first = true;
    Bidegree deg{0, 0};
    for (const auto& [key, c] : terms) {
        decode(key, a, b);
        int p = 0, q = 0;
        for (int i = 0; i < n; ++i) {
            p += a[i];
            q += b[i];
        }
        if (first) {
            deg = {p, q};
            first = false;
        } else if (deg != Bidegree{p, q}) {
            return false;
        }
    }
    if (bd) *bd = deg;
    return true;
}

double SpherePoly::max_coeff_abs() const {
    double m = 0.0;
    for (const auto& [key, c] : terms) m = std::max(m, std::abs(c));
    return m;
}

void SpherePoly::prune(double eps) {
    for (auto it = terms.begin(); it != terms.end();) {
        if (std::abs(it->second) <= eps)
            it = terms.erase(it);
        else
            ++it;
    }
}

SpherePoly SpherePoly::conjugate() const {
    SpherePoly out(n);
    out.terms.reserve(terms.size());
    int a[8], b[8];
    MultiIndex ma(n), mb(n);
    for (const auto& [key, c] : terms) {
        decode(key, a, b);
        for (int i = 0; i < n; ++i) {
            ma[i] = b[i];
            mb[i] = a[i];
        }
        out.add_term(ma, mb, std::conj(c));
    }
    return out;
}

SpherePoly SpherePoly::scaled(Complex s) const {
    SpherePoly out(n);
    if (s == Complex{0.0, 0.0}) return out;
    out.terms.reserve(terms.size());
    for (const auto& [key, c] : terms) out.terms.emplace(key, c * s);
    return out;
}

SpherePoly add(const SpherePoly& f, const SpherePoly& g) {
    if (f.n != g.n) throw std::invalid_argument("add: dimension mismatch");
    SpherePoly out = f;
    for (const auto& [key, c] : g.terms) out.add_key(key, c);
    return out;
}

SpherePoly subtract(const SpherePoly& f, const SpherePoly& g) {
    if (f.n != g.n) throw std::invalid_argument("subtract: dimension mismatch");
    SpherePoly out = f;
    for (const auto& [key, c] : g.terms) out.add_key(key, -c);
    return out;
}

SpherePoly multiply(const SpherePoly& f, const SpherePoly& g) {
    if (f.n != g.n) throw std::invalid_argument("multiply: dimension mismatch");
    SpherePoly out(f.n);
    out.terms.reserve(f.terms.size() * std::min<std::size_t>(g.terms.size(), 8));
    const int n = f.n;
    const int w = SpherePoly::exponent_bits(n);
    const int cap = SpherePoly::max_exponent(n);
    int fa[8], fb[8], ga[8], gb[8];
    for (const auto& [kf, cf] : f.terms) {
        f.decode(kf, fa, fb);
        for (const auto& [kg, cg] : g.terms) {
            g.decode(kg, ga, gb);
            std::uint64_t key = 0;
            for (int i = 0; i < n; ++i) {
                const int ea = fa[i] + ga[i];
                const int eb = fb[i] + gb[i];
                if (ea > cap || eb > cap)
                    throw std::overflow_error("multiply: exponent exceeds the packed-key cap");
                key |= static_cast<std::uint64_t>(ea) << (w * i);
                key |= static_cast<std::uint64_t>(eb) << (w * (n + i));
            }
            out.add_key(key, cf * cg);
        }
    }
    return out;
}

SpherePoly d_dz(const SpherePoly& f, int i) {
    SpherePoly out(f.n);
    int a[8], b[8];
    MultiIndex ma(f.n), mb(f.n);
    for (const auto& [key, c] : f.terms) {
        f.decode(key, a, b);
        if (a[i] == 0) continue;
        for (int t = 0; t < f.n; ++t) {
            ma[t] = a[t];
            mb[t] = b[t];
        }
        ma[i] -= 1;
        out.add_term(ma, mb, c * static_cast<double>(a[i]));
    }
    return out;
}

SpherePoly d_dzbar(const SpherePoly& f, int i) {
    SpherePoly out(f.n);
    int a[8], b[8];
    MultiIndex ma(f.n), mb(f.n);
    for (const auto& [key, c] : f.terms) {
        f.decode(key, a, b);
        if (b[i] == 0) continue;
        for (int t = 0; t < f.n; ++t) {
            ma[t] = a[t];
            mb[t] = b[t];
        }
        mb[i] -= 1;
        out.add_term(ma, mb, c * static_cast<double>(b[i]));
    }
    return out;
}

SpherePoly complex_laplacian(const SpherePoly& f) {
    SpherePoly out(f.n);
    int a[8], b[8];
    MultiIndex ma(f.n), mb(f.n);
    for (const auto& [key, c] : f.terms) {
        f.decode(key, a, b);
        for (int i = 0; i < f.n; ++i) {
            if (a[i] == 0 || b[i] == 0) continue;
            for (int t = 0; t < f.n; ++t) {
                ma[t] = a[t];
                mb[t] = b[t];
            }
            ma[i] -= 1;
            mb[i] -= 1;
            out.add_term(ma, mb, c * (4.0 * a[i] * b[i]));
        }
    }
    return out;
}

double monomial_integral(const MultiIndex& alpha, const MultiIndex& beta, int n) {
    if (static_cast<int>(alpha.size()) != n || static_cast<int>(beta.size()) != n)
        throw std::invalid_argument("monomial_integral: multi-index length must equal n");
    if (n < 1) throw std::invalid_argument("monomial_integral: n must be positive");
    if (alpha != beta) return 0.0;

    long long t = 0;
    for (int e : alpha) {
        if (e < 0) throw std::invalid_argument("monomial_integral: negative exponent");
        t += e;
    }
    if (t > kMaxIntegralDegree)
        throw std::domain_error("monomial_integral: total degree beyond the cap of 200");

    if (t < kExactRationalFrom) {
        double s = lgamma_int(n) - lgamma_int(static_cast<int>(t) + n);
        for (int e : alpha) s += lgamma_int(e + 1);
        return std::exp(s);
    }

    using boost::multiprecision::cpp_int;
    using boost::multiprecision::cpp_rational;
    auto factorial = [](long long m) {
        cpp_int r = 1;
        for (long long i = 2; i <= m; ++i) r *= i;
        return r;
    };
    cpp_int num = factorial(n - 1);
    for (int e : alpha) num *= factorial(e);
    const cpp_int den = factorial(n - 1 + t);
    // the rational conversion scales internally, so tiny ratios at high
    // dimension stay exact to double rounding
    return cpp_rational(num, den).convert_to<double>();
}

Complex integrate_sphere(const SpherePoly& f) {
    Complex s{0.0, 0.0};
    int a[8], b[8];
    MultiIndex ma(f.n);
    for (const auto& [key, c] : f.terms) {
        f.decode(key, a, b);
        bool diag = true;
        for (int i = 0; i < f.n; ++i)
            if (a[i] != b[i]) {
                diag = false;
                break;
            }
        if (!diag) continue;
        for (int i = 0; i < f.n; ++i) ma[i] = a[i];
        s += c * monomial_integral(ma, ma, f.n);
    }
    return s;
}

double norm_sq_sphere(const SpherePoly& f) {
    // <z^a conj(z)^b, z^a' conj(z)^b'> vanishes unless a - b = a' - b', so
    // group by the difference vector and pair only within groups
    struct Entry {
        std::array<int, 8> a;
        std::array<int, 8> b;
        Complex c;
    };
    std::map<std::array<int, 8>, std::vector<Entry>> groups;
    int a[8], b[8];
    for (const auto& [key, c] : f.terms) {
        f.decode(key, a, b);
        std::array<int, 8> d{};
        Entry e;
        e.a.fill(0);
        e.b.fill(0);
        for (int i = 0; i < f.n; ++i) {
            d[i] = a[i] - b[i];
            e.a[i] = a[i];
            e.b[i] = b[i];
        }
        e.c = c;
        groups[d].push_back(e);
    }
    double total = 0.0;
    MultiIndex gamma(f.n);
    for (const auto& [d, entries] : groups) {
        for (const auto& s : entries) {
            for (const auto& t : entries) {
                // integral of z^{a_s + b_t} conj(z)^{b_s + a_t}; the shared
                // difference makes the pair diagonal
                for (int i = 0; i < f.n; ++i) gamma[i] = s.a[i] + t.b[i];
                total += (s.c * std::conj(t.c)).real() * monomial_integral(gamma, gamma, f.n);
            }
        }
    }
    return std::max(total, 0.0);
}

std::map<Bidegree, SpherePoly> bidegree_components(const SpherePoly& f) {
    std::map<Bidegree, SpherePoly> out;
    int a[8], b[8];
    for (const auto& [key, c] : f.terms) {
        f.decode(key, a, b);
        int p = 0, q = 0;
        for (int i = 0; i < f.n; ++i) {
            p += a[i];
            q += b[i];
        }
        auto [it, inserted] = out.try_emplace(Bidegree{p, q}, f.n);
        it->second.add_key(key, c);
    }
    return out;
}

namespace {

SpherePoly norm_sq_poly(int n) {
    SpherePoly r2(n);
    MultiIndex e(n, 0);
    for (int i = 0; i < n; ++i) {
        e[i] = 1;
        r2.add_term(e, e, {1.0, 0.0});
        e[i] = 0;
    }
    return r2;
}

}  // namespace

std::vector<SpherePoly> harmonic_decomposition(const SpherePoly& f) {
    Bidegree bd;
    if (!f.is_homogeneous(&bd))
        throw std::invalid_argument("harmonic_decomposition: input is not homogeneous in bidegree");
    if (f.is_zero()) return {f};

    const int p = bd.first, q = bd.second;
    if (p == 0 || q == 0) return {f};  // nothing to contract, already harmonic

    const SpherePoly lap = complex_laplacian(f);
    if (lap.is_zero()) return {f};

    // f = sum_l r^{2l} h_l gives Delta f = sum_{l>=1} 4l(p+q-l+n-1) r^{2(l-1)} h_l
    const std::vector<SpherePoly> g = harmonic_decomposition(lap);
    std::vector<SpherePoly> h;
    h.reserve(g.size() + 1);
    h.emplace_back(f.n);  // placeholder for h_0
    for (std::size_t l = 1; l <= g.size(); ++l) {
        const double factor = 4.0 * static_cast<double>(l) *
                              static_cast<double>(p + q - static_cast<int>(l) + f.n - 1);
        h.push_back(g[l - 1].scaled({1.0 / factor, 0.0}));
    }

    const SpherePoly r2 = norm_sq_poly(f.n);
    SpherePoly rest(f.n);
    SpherePoly r2l = r2;
    for (std::size_t l = 1; l < h.size(); ++l) {
        rest = add(rest, multiply(r2l, h[l]));
        if (l + 1 < h.size()) r2l = multiply(r2l, r2);
    }
    h[0] = subtract(f, rest);
    return h;
}

BidegreeSpectrum spectrum(const SpherePoly& f, double tol) {
    BidegreeSpectrum out;
    for (const auto& [bd, comp] : bidegree_components(f)) {
        const auto parts = harmonic_decomposition(comp);
        for (std::size_t l = 0; l < parts.size(); ++l) {
            if (parts[l].is_zero()) continue;
            if (std::sqrt(norm_sq_sphere(parts[l])) > tol)
                out.insert({bd.first - static_cast<int>(l), bd.second - static_cast<int>(l)});
        }
    }
    return out;
}

namespace {

void check_on_sphere(const CVec& zeta) {
    double r2 = 0.0;
    for (const auto& z : zeta) r2 += std::norm(z);
    if (std::abs(std::sqrt(r2) - 1.0) > 1e-10)
        throw std::invalid_argument("point is not on the unit sphere");
}

}  // namespace

TrigPoly slice_restrict(const SpherePoly& f, const CVec& zeta) {
    if (static_cast<int>(zeta.size()) != f.n)
        throw std::invalid_argument("slice_restrict: point dimension mismatch");
    check_on_sphere(zeta);

    // power tables per coordinate up to the largest exponent
    int a[8], b[8];
    int max_e = 0;
    for (const auto& [key, c] : f.terms) {
        f.decode(key, a, b);
        for (int i = 0; i < f.n; ++i) max_e = std::max({max_e, a[i], b[i]});
    }
    std::vector<std::vector<Complex>> pw(f.n);
    for (int i = 0; i < f.n; ++i) {
        pw[i].resize(max_e + 1);
        pw[i][0] = {1.0, 0.0};
        for (int e = 1; e <= max_e; ++e) pw[i][e] = pw[i][e - 1] * zeta[i];
    }

    TrigPoly out;
    for (const auto& [key, c] : f.terms) {
        f.decode(key, a, b);
        Complex v = c;
        long long freq = 0;
        for (int i = 0; i < f.n; ++i) {
            v *= pw[i][a[i]] * std::conj(pw[i][b[i]]);
            freq += a[i] - b[i];
        }
        out.add(freq, v);
    }
    return out;
}

double slice_integral_residual_exact(const SpherePoly& f) {
    const Complex lhs = integrate_sphere(f);
    // the inner circle integral keeps only |alpha| = |beta| terms, leaving a
    // polynomial in zeta, conj(zeta) that is integrated exactly
    SpherePoly balanced(f.n);
    int a[8], b[8];
    for (const auto& [key, c] : f.terms) {
        f.decode(key, a, b);
        int p = 0, q = 0;
        for (int i = 0; i < f.n; ++i) {
            p += a[i];
            q += b[i];
        }
        if (p == q) balanced.add_key(key, c);
    }
    const Complex rhs = integrate_sphere(balanced);
    return std::abs(lhs - rhs);
}

double slice_integral_residual_sampled(const SpherePoly& f, std::size_t samples,
                                       std::uint64_t seed) {
    const Complex lhs = integrate_sphere(f);
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < samples; ++i) {
        const CVec zeta = sample_sphere_point(f.n, seed, i);
        acc += slice_restrict(f, zeta).coeff(0);  // exact circle mean of the slice
    }
    return std::abs(lhs - acc / static_cast<double>(samples));
}

CVec sample_sphere_point(int n, std::uint64_t seed, std::uint64_t index) {
    Rng rng = derive_stream(seed, kStreamSphereSample, index);
    CVec z(n);
    double r2 = 0.0;
    for (int i = 0; i < n; ++i) {
        z[i] = rng.complex_gaussian();
        r2 += std::norm(z[i]);
    }
    const double inv = 1.0 / std::sqrt(r2);
    for (int i = 0; i < n; ++i) z[i] *= inv;
    return z;
}

std::vector<CVec> sample_sphere(int n, std::size_t count, std::uint64_t seed) {
    std::vector<CVec> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(sample_sphere_point(n, seed, i));
    return out;
}

SpherePoly random_poly(int n, int max_total_degree, std::uint64_t seed) {
    Rng rng = derive_stream(seed, kStreamSigns, 0x5eed);
    SpherePoly out(n);
    for (int p = 0; p <= max_total_degree; ++p) {
        for (int q = 0; p + q <= max_total_degree; ++q) {
            for (const auto& alpha : enumerate_multi_indices(n, p))
                for (const auto& beta : enumerate_multi_indices(n, q))
                    out.add_term(alpha, beta, {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
        }
    }
    return out;
}

PolyEvaluator::PolyEvaluator(const SpherePoly& f) : n_(f.n) {
    terms_.reserve(f.term_count());
    int a[8], b[8];
    for (const auto& [key, c] : f.terms) {
        f.decode(key, a, b);
        Term t;
        t.c = c;
        for (int i = 0; i < n_; ++i) {
            t.a[i] = static_cast<std::uint16_t>(a[i]);
            t.b[i] = static_cast<std::uint16_t>(b[i]);
            max_exp_ = std::max({max_exp_, a[i], b[i]});
        }
        terms_.push_back(t);
    }
    logspace_ = (f.max_coeff_abs() > 1e60) || (f.total_degree() > 300);
    if (logspace_) {
        for (auto& t : terms_) {
            t.logmag = std::log(std::abs(t.c));
            t.phase = std::arg(t.c);
        }
    }
}

Complex PolyEvaluator::eval(const CVec& z) const {
    if (static_cast<int>(z.size()) != n_)
        throw std::invalid_argument("PolyEvaluator: point dimension mismatch");

    if (!logspace_) {
        std::vector<std::vector<Complex>> pw(n_);
        for (int i = 0; i < n_; ++i) {
            pw[i].resize(max_exp_ + 1);
            pw[i][0] = {1.0, 0.0};
            for (int e = 1; e <= max_exp_; ++e) pw[i][e] = pw[i][e - 1] * z[i];
        }
        Complex acc{0.0, 0.0};
        for (const auto& t : terms_) {
            Complex v = t.c;
            for (int i = 0; i < n_; ++i) {
                if (t.a[i]) v *= pw[i][t.a[i]];
                if (t.b[i]) v *= std::conj(pw[i][t.b[i]]);
            }
            acc += v;
        }
        return acc;
    }

    double lg[8], ag[8];
    bool zero[8];
    for (int i = 0; i < n_; ++i) {
        const double m = std::abs(z[i]);
        zero[i] = (m == 0.0);
        lg[i] = zero[i] ? 0.0 : std::log(m);
        ag[i] = zero[i] ? 0.0 : std::arg(z[i]);
    }
    Complex acc{0.0, 0.0};
    for (const auto& t : terms_) {
        double m = t.logmag;
        double ph = t.phase;
        bool dead = false;
        for (int i = 0; i < n_; ++i) {
            const int tot = t.a[i] + t.b[i];
            if (tot == 0) continue;
            if (zero[i]) {
                dead = true;
                break;
            }
            m += tot * lg[i];
            ph += (t.a[i] - t.b[i]) * ag[i];
        }
        if (dead || m < -300.0) continue;
        const double mag = std::exp(m);
        acc += Complex{mag * std::cos(ph), mag * std::sin(ph)};
    }
    return acc;
}

Complex evaluate(const SpherePoly& f, const CVec& z) { return PolyEvaluator(f).eval(z); }

SupBounds sup_norm_bounds(const SpherePoly& f, std::size_t samples, int ascent_steps,
                          std::uint64_t seed) {
    SupBounds out;
    int a[8], b[8];
    MultiIndex gamma(f.n);
    for (const auto& [key, c] : f.terms) {
        f.decode(key, a, b);
        for (int i = 0; i < f.n; ++i) gamma[i] = a[i] + b[i];
        out.upper += std::abs(c) * monomial_sup(gamma);
    }
    if (f.is_zero() || samples == 0) return out;

    const PolyEvaluator fe(f);
    std::vector<PolyEvaluator> dz, dzb;
    dz.reserve(f.n);
    dzb.reserve(f.n);
    for (int i = 0; i < f.n; ++i) {
        dz.emplace_back(d_dz(f, i));
        dzb.emplace_back(d_dzbar(f, i));
    }

    struct Start {
        double value;
        CVec point;
    };
    std::vector<Start> starts;
    starts.reserve(samples);
    for (std::size_t s = 0; s < samples; ++s) {
        CVec z = sample_sphere_point(f.n, mix_seed(seed, kStreamAscent, 0), s);
        starts.push_back({std::abs(fe.eval(z)), std::move(z)});
    }
    std::sort(starts.begin(), starts.end(),
              [](const Start& x, const Start& y) { return x.value > y.value; });
    const std::size_t multistarts = std::min<std::size_t>(64, starts.size());
    out.lower = starts.front().value;

    const double deg = std::max<double>(1.0, static_cast<double>(f.total_degree()));
    for (std::size_t s = 0; s < multistarts; ++s) {
        CVec z = starts[s].point;
        double best = starts[s].value;
        double step = 0.5 / deg;
        for (int it = 0; it < ascent_steps && step > 1e-12; ++it) {
            const Complex fv = fe.eval(z);
            CVec g(f.n);
            for (int i = 0; i < f.n; ++i) {
                const Complex dv = dz[i].eval(z);
                const Complex dvb = dzb[i].eval(z);
                // gradient of |f|^2 in the realified coordinates
                const double gx = 2.0 * (std::conj(fv) * (dv + dvb)).real();
                const double gy = -2.0 * (std::conj(fv) * (dv - dvb)).imag();
                g[i] = {gx, gy};
            }
            CVec trial(f.n);
            double r2 = 0.0;
            for (int i = 0; i < f.n; ++i) {
                trial[i] = z[i] + step * g[i];
                r2 += std::norm(trial[i]);
            }
            if (r2 == 0.0) break;
            const double inv = 1.0 / std::sqrt(r2);
            for (int i = 0; i < f.n; ++i) trial[i] *= inv;
            const double v = std::abs(fe.eval(trial));
            if (v > best) {
                best = v;
                z = std::move(trial);
                step *= 1.25;
            } else {
                step *= 0.5;
            }
        }
        out.lower = std::max(out.lower, best);
    }
    out.lower = std::min(out.lower, out.upper);
    return out;
}

}  // namespace riesz
