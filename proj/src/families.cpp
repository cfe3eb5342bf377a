#include "erfq/families.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "erfq/errors.hpp"
#include "erfq/kernels.hpp"

namespace erfq {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double sign_pow(int n) { return n % 2 == 0 ? 1.0 : -1.0; }

// Uniform double in [0,1) from the top 53 bits.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

cplx uniform_in_disk(std::mt19937_64& rng, double radius) {
    const double r = radius * std::sqrt(unit(rng));
    return std::polar(r, 2.0 * kPi * unit(rng));
}

TruncatedSeries rotate(const TruncatedSeries& w, double theta, double theta_inner) {
    if (theta == 0.0 && theta_inner == 0.0) return w;
    std::vector<cplx> c(w.coeffs().begin(), w.coeffs().end());
    for (int n = 0; n <= w.order(); ++n) c[static_cast<std::size_t>(n)] *= std::polar(1.0, theta - n * theta_inner);
    return TruncatedSeries(std::move(c));
}

// (a + u z)/(1 + conj(a) u z) with |u| = 1, as a series.
TruncatedSeries mobius_series(cplx a, cplx u, int order) {
    const TruncatedSeries num = TruncatedSeries::constant(a, order).with_coeff(1, u);
    const TruncatedSeries den = TruncatedSeries::constant(1.0, order).with_coeff(1, std::conj(a) * u);
    return div(num, den);
}

double grid_sup(const auto& fn) {
    double sup = 0.0;
    for (int j = 0; j < kBoundaryGrid; ++j) {
        const cplx z = std::polar(kBoundaryRadius, 2.0 * kPi * j / kBoundaryGrid);
        sup = std::max(sup, std::abs(fn(z)));
    }
    return sup;
}

} // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 over the pair
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

TruncatedSeries erf_series(int order) {
    if (order < 1) throw DomainError("erf_series: order must be at least 1");
    std::vector<cplx> c(static_cast<std::size_t>(order) + 1);
    const double lead = 2.0 / std::sqrt(kPi);
    for (int n = 0; 2 * n + 1 <= order; ++n) {
        c[static_cast<std::size_t>(2 * n + 1)] = lead * sign_pow(n) / ((2 * n + 1) * factorial(n));
    }
    return TruncatedSeries(std::move(c));
}

std::uint64_t normalized_erf_denominator(int n) {
    if (n < 1) throw DomainError("normalized_erf_denominator: n must be at least 1");
    std::uint64_t f = 1;
    for (int i = 2; i <= n - 1; ++i) f *= static_cast<std::uint64_t>(i);
    return static_cast<std::uint64_t>(2 * n - 1) * f;
}

TruncatedSeries normalized_erf_series(int order) {
    if (order < 1) throw DomainError("normalized_erf_series: order must be at least 1");
    std::vector<cplx> c(static_cast<std::size_t>(order) + 1);
    for (int n = 1; n <= order; ++n) {
        c[static_cast<std::size_t>(n)] = sign_pow(n - 1) / ((2 * n - 1) * factorial(n - 1));
    }
    return TruncatedSeries(std::move(c));
}

TruncatedSeries recompose_normalized_erf(const TruncatedSeries& erf, int order) {
    std::vector<cplx> c(static_cast<std::size_t>(order) + 1);
    const double half_root_pi = 0.5 * std::sqrt(kPi);
    for (int m = 1; m <= order; ++m) c[static_cast<std::size_t>(m)] = half_root_pi * erf[2 * m - 1];
    return TruncatedSeries(std::move(c));
}

TruncatedSeries to_family_E(const TruncatedSeries& f) {
    if (f.order() < 1 || std::abs(f[0]) > 1e-14 || std::abs(f[1] - 1.0) > 1e-12) {
        throw NotNormalized("to_family_E: f must satisfy f(0) = 0, f'(0) = 1");
    }
    return hadamard(f, normalized_erf_series(f.order()));
}

TruncatedSeries from_family_E(const TruncatedSeries& F) {
    if (F.order() < 1 || std::abs(F[1] - 1.0) > 1e-12) {
        throw NotNormalized("from_family_E: F must satisfy F'(0) = 1");
    }
    std::vector<cplx> c(static_cast<std::size_t>(F.order()) + 1);
    for (int n = 1; n <= F.order(); ++n) {
        c[static_cast<std::size_t>(n)] = F[n] * sign_pow(n - 1) * (2.0 * n - 1.0) * factorial(n - 1);
    }
    return TruncatedSeries(std::move(c));
}

// --- Schwarz --------------------------------------------------------------

std::string variant_name(const SchwarzSpec& spec) {
    return std::visit(overloaded{
                          [](const Monomial&) { return std::string("monomial"); },
                          [](const MobiusPlus&) { return std::string("mobius-plus"); },
                          [](const MobiusMinus&) { return std::string("mobius-minus"); },
                          [](const Blaschke&) { return std::string("blaschke"); },
                          [](const ExplicitSeries&) { return std::string("explicit"); },
                      },
                      spec.form);
}

void check_schwarz_spec(const SchwarzSpec& spec) {
    if (!std::isfinite(spec.theta) || !std::isfinite(spec.theta_inner)) throw InvalidSpec("rotation must be finite");
    std::visit(overloaded{
                   [](const Monomial& m) {
                       if (m.power < 1) throw InvalidSpec("monomial power must be >= 1");
                   },
                   [](const MobiusPlus& m) {
                       if (!(m.lambda >= 0.0 && m.lambda <= 1.0)) throw InvalidSpec("lambda must lie in [0,1]");
                   },
                   [](const MobiusMinus& m) {
                       if (!(m.lambda >= 0.0 && m.lambda <= 1.0)) throw InvalidSpec("lambda must lie in [0,1]");
                   },
                   [](const Blaschke& b) {
                       if (b.zeros.size() > 2) throw InvalidSpec("Blaschke degree must be <= 3");
                       for (const cplx a : b.zeros) {
                           if (!(std::abs(a) < 1.0)) throw InvalidSpec("Blaschke zeros must lie inside the disk");
                       }
                   },
                   [](const ExplicitSeries& e) {
                       if (e.series[0] != cplx{}) throw InvalidSpec("explicit Schwarz series needs c_0 = 0");
                   },
               },
               spec.form);
}

TruncatedSeries schwarz_series(const SchwarzSpec& spec, int order) {
    check_schwarz_spec(spec);
    const TruncatedSeries z = TruncatedSeries::monomial(1, order);
    auto plus = [&](double lambda) {
        const TruncatedSeries num = TruncatedSeries::monomial(1, order, lambda).with_coeff(2, 1.0);
        const TruncatedSeries den = TruncatedSeries::constant(1.0, order).with_coeff(1, lambda);
        return div(num, den);
    };
    const TruncatedSeries base = std::visit(
        overloaded{
            [&](const Monomial& m) { return TruncatedSeries::monomial(m.power, order); },
            [&](const MobiusPlus& m) { return plus(m.lambda); },
            [&](const MobiusMinus& m) { return scale(plus(m.lambda), -1.0); },
            [&](const Blaschke& b) {
                TruncatedSeries w = z;
                for (const cplx a : b.zeros) w = mul(w, mobius_series(-a, 1.0, order));
                return w;
            },
            [&](const ExplicitSeries& e) { return e.series.truncated(order); },
        },
        spec.form);
    return rotate(base, spec.theta, spec.theta_inner);
}

cplx eval_schwarz(const SchwarzSpec& spec, cplx z) {
    check_schwarz_spec(spec);
    const cplx zr = z * std::polar(1.0, -spec.theta_inner);
    const cplx w = std::visit(overloaded{
                                  [&](const Monomial& m) { return std::pow(zr, m.power); },
                                  [&](const MobiusPlus& m) { return zr * (m.lambda + zr) / (1.0 + m.lambda * zr); },
                                  [&](const MobiusMinus& m) { return -zr * (m.lambda + zr) / (1.0 + m.lambda * zr); },
                                  [&](const Blaschke& b) {
                                      cplx acc = zr;
                                      for (const cplx a : b.zeros) acc *= (zr - a) / (1.0 - std::conj(a) * zr);
                                      return acc;
                                  },
                                  [&](const ExplicitSeries& e) { return eval(e.series, zr); },
                              },
                              spec.form);
    return std::polar(1.0, spec.theta) * w;
}

bool validate_schwarz(const TruncatedSeries& series) {
    if (series[0] != cplx{}) return false;
    return grid_sup([&](cplx z) { return eval(series, z); }) <= 1.0 + kBoundaryTol;
}

bool validate_schwarz(const SchwarzSpec& spec) {
    try {
        check_schwarz_spec(spec);
    } catch (const InvalidSpec&) {
        return false;
    }
    if (const auto* e = std::get_if<ExplicitSeries>(&spec.form)) return validate_schwarz(e->series);
    return grid_sup([&](cplx z) { return eval_schwarz(spec, z); }) <= 1.0 + kBoundaryTol;
}

SchwarzSpec sample_schwarz(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int extra = static_cast<int>(rng() % 3); // degree 1..3
    Blaschke b;
    for (int i = 0; i < extra; ++i) b.zeros.push_back(uniform_in_disk(rng, 0.95));
    SchwarzSpec spec{b};
    spec.theta = 2.0 * kPi * unit(rng);
    spec.theta_inner = 2.0 * kPi * unit(rng);
    spec.seed = seed;
    return spec;
}

std::vector<SchwarzSpec> sample_schwarz_batch(std::uint64_t seed, std::size_t count, Exec exec) {
    return kernels::map<SchwarzSpec>(exec, count, [seed](std::size_t i) { return sample_schwarz(derive_seed(seed, i)); });
}

// --- phi ------------------------------------------------------------------

std::string variant_name(const PhiSpec& spec) {
    return std::visit(overloaded{
                          [](const PhiConstant&) { return std::string("constant"); },
                          [](const PhiMobius&) { return std::string("mobius"); },
                          [](const PhiExplicit&) { return std::string("explicit"); },
                      },
                      spec.form);
}

void check_phi_spec(const PhiSpec& spec) {
    std::visit(overloaded{
                   [](const PhiConstant& c) {
                       if (!(std::abs(c.d0) <= 1.0)) throw InvalidSpec("constant phi needs |d0| <= 1");
                   },
                   [](const PhiMobius& m) {
                       if (!(std::abs(m.a) < 1.0)) throw InvalidSpec("phi Mobius parameter needs |a| < 1");
                       if (!(m.rho >= 0.0 && m.rho <= 1.0)) throw InvalidSpec("phi scale rho must lie in [0,1]");
                       if (!std::isfinite(m.psi)) throw InvalidSpec("phi rotation must be finite");
                   },
                   [](const PhiExplicit&) {},
               },
               spec.form);
}

TruncatedSeries phi_series(const PhiSpec& spec, int order) {
    check_phi_spec(spec);
    return std::visit(overloaded{
                          [&](const PhiConstant& c) { return TruncatedSeries::constant(c.d0, order); },
                          [&](const PhiMobius& m) {
                              return scale(mobius_series(m.a, std::polar(1.0, m.psi), order), m.rho);
                          },
                          [&](const PhiExplicit& e) { return e.series.truncated(order); },
                      },
                      spec.form);
}

cplx eval_phi(const PhiSpec& spec, cplx z) {
    check_phi_spec(spec);
    return std::visit(overloaded{
                          [&](const PhiConstant& c) { return c.d0; },
                          [&](const PhiMobius& m) {
                              const cplx uz = std::polar(1.0, m.psi) * z;
                              return m.rho * (m.a + uz) / (1.0 + std::conj(m.a) * uz);
                          },
                          [&](const PhiExplicit& e) { return eval(e.series, z); },
                      },
                      spec.form);
}

bool validate_phi(const TruncatedSeries& series) {
    return grid_sup([&](cplx z) { return eval(series, z); }) <= 1.0 + kBoundaryTol;
}

bool validate_phi(const PhiSpec& spec) {
    try {
        check_phi_spec(spec);
    } catch (const InvalidSpec&) {
        return false;
    }
    if (const auto* e = std::get_if<PhiExplicit>(&spec.form)) return validate_phi(e->series);
    return grid_sup([&](cplx z) { return eval_phi(spec, z); }) <= 1.0 + kBoundaryTol;
}

PhiSpec sample_phi(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    PhiSpec spec;
    spec.seed = seed;
    if (rng() % 4 == 0) {
        spec.form = PhiConstant{uniform_in_disk(rng, 1.0)};
    } else {
        PhiMobius m;
        m.a = uniform_in_disk(rng, 0.95);
        const double u = unit(rng);
        m.rho = 1.0 - u * u; // weighted toward |phi| close to 1
        m.psi = 2.0 * kPi * unit(rng);
        spec.form = m;
    }
    return spec;
}

std::vector<PhiSpec> sample_phi_batch(std::uint64_t seed, std::size_t count, Exec exec) {
    return kernels::map<PhiSpec>(exec, count, [seed](std::size_t i) {
        return sample_phi(derive_seed(seed ^ 0x5DEECE66DULL, i));
    });
}

// --- outer targets --------------------------------------------------------

OuterTarget::OuterTarget(TruncatedSeries series) : series_(std::move(series)) {
    if (series_.order() < 2) throw InvalidSpec("outer target needs order >= 2");
    if (std::abs(series_[0] - 1.0) > 1e-12) throw InvalidSpec("outer target needs c_0 = 1");
    if (!(series_[1].real() > 0.0) || std::abs(series_[1].imag()) > 1e-12) {
        throw InvalidSpec("outer target needs real c_1 > 0");
    }
}

OuterTarget OuterTarget::from_conic(const ConicParams& params, int order) {
    return OuterTarget(pk_taylor(params, order));
}

OuterTarget OuterTarget::from_coeffs(double c1, double c2, int order) {
    return OuterTarget(TruncatedSeries::constant(1.0, order).with_coeff(1, c1).with_coeff(2, c2));
}

} // namespace erfq
