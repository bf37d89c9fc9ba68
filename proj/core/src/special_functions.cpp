#include "genhilbert/special_functions.hpp"

#include <array>
#include <cfloat>
#include <cmath>
#include <sstream>

#include "genhilbert/errors.hpp"

namespace genhilbert {

namespace {

std::string describe(double alpha, double beta) {
    std::ostringstream os;
    os.precision(17);
    os << "(alpha=" << alpha << ", beta=" << beta << ")";
    return os.str();
}

// Remainder of Stirling's series, sum_k B_{2k} / (2k(2k-1) z^{2k-1}), z >= 10.
double stirling_remainder(double z) {
    static constexpr std::array<double, 7> c = {
        1.0 / 12.0,  -1.0 / 360.0,          1.0 / 1260.0, -1.0 / 1680.0,
        1.0 / 1188.0, -691.0 / 360360.0,    1.0 / 156.0};
    const double r = 1.0 / z;
    const double r2 = r * r;
    double acc = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) {
        acc = acc * r2 + c[k];
    }
    return acc * r;
}

constexpr double kStirlingCutoff = 10.0;

}  // namespace

OperatorParams::OperatorParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    if (!std::isfinite(alpha) || !std::isfinite(beta)) {
        throw DomainError("operator parameters must be finite " + describe(alpha, beta));
    }
    if (!(alpha > -1.0)) {
        throw DomainError("alpha > -1 violated " + describe(alpha, beta));
    }
    if (!(beta > -1.0)) {
        throw DomainError("beta > -1 violated " + describe(alpha, beta));
    }
    if (!(beta - alpha > -1.0)) {
        throw DomainError("beta - alpha > -1 violated " + describe(alpha, beta));
    }
}

double log_gamma(double x) {
    if (!(x > 0.0) || std::isnan(x)) {
        throw DomainError("log_gamma requires x > 0");
    }
    int sign = 0;
    if (x < 1.0) {
        return ::lgamma_r(x + 1.0, &sign) - std::log(x);
    }
    return ::lgamma_r(x, &sign);
}

double log_gamma_ratio(double x, double s) {
    const double y = x + s;
    if (!(x > 0.0) || !(y > 0.0)) {
        throw DomainError("log_gamma_ratio requires x > 0 and x + s > 0");
    }
    if (s == 0.0) {
        return 0.0;
    }
    if (x >= kStirlingCutoff && y >= kStirlingCutoff) {
        return (x - 0.5) * std::log1p(s / x) + s * std::log(y) - s + stirling_remainder(y) -
               stirling_remainder(x);
    }
    return log_gamma(y) - log_gamma(x);
}

double log_pochhammer_shifted(double gamma, double s) {
    if (!(gamma > -1.0) || !(gamma + s > -1.0)) {
        throw DomainError("pochhammer_shifted requires gamma > -1 and gamma + s > -1");
    }
    if (s == 0.0) {
        return 0.0;
    }
    return log_gamma_ratio(gamma + 1.0, s);
}

double pochhammer_shifted(double gamma, double s) {
    if (s == 0.0 && gamma > -1.0) {
        return 1.0;
    }
    return std::exp(log_pochhammer_shifted(gamma, s));
}

double real_binomial(double gamma, std::uint64_t m) {
    double value = 1.0;
    for (std::uint64_t i = 0; i < m; ++i) {
        value *= (gamma - static_cast<double>(i)) / static_cast<double>(i + 1);
    }
    return value;
}

double log_kernel_real(double m, double n, const OperatorParams& params) {
    const double a = params.alpha();
    const double g = params.gap();
    // ln Gamma(n+m+beta+1) - ln Gamma(m+alpha+1) - ln Gamma(n+beta-alpha+1)
    return log_gamma_ratio(m + a + 1.0, n + g) - log_gamma(n + g + 1.0);
}

double log_kernel(std::uint64_t m, std::uint64_t n, const OperatorParams& params) {
    return log_kernel_real(static_cast<double>(m), static_cast<double>(n), params);
}

double kernel(std::uint64_t m, std::uint64_t n, const OperatorParams& params) {
    const double lk = log_kernel(m, n, params);
    if (lk > std::log(DBL_MAX)) {
        std::ostringstream os;
        os << "kernel(" << m << ", " << n << ") overflows double precision (log value " << lk << ")";
        throw OverflowError(os.str());
    }
    // Direct Gamma ratio while tgamma stays finite: exact for small integer
    // arguments, a few ulp otherwise. exp of the log form loses |lk| * eps.
    const double top = static_cast<double>(n) + static_cast<double>(m) + params.beta() + 1.0;
    if (top < 170.0) {
        return std::tgamma(top) / (std::tgamma(static_cast<double>(m) + params.alpha() + 1.0) *
                                   std::tgamma(static_cast<double>(n) + params.gap() + 1.0));
    }
    return std::exp(lk);
}

KernelAltForms kernel_alt_forms(std::uint64_t m, std::uint64_t n, const OperatorParams& params) {
    const double a = params.alpha();
    const double b = params.beta();
    const double g = params.gap();
    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    const double sign_m = (m % 2 == 0) ? 1.0 : -1.0;
    const double sign_n = (n % 2 == 0) ? 1.0 : -1.0;

    const double m_form = sign_m * real_binomial(-nd - b - 1.0, m) / pochhammer_shifted(md, a) *
                          pochhammer_shifted(nd + g, a);
    const double n_form = sign_n * real_binomial(-md - b - 1.0, n) / pochhammer_shifted(nd, g) *
                          pochhammer_shifted(md + a, g);
    return {m_form, n_form};
}

double log_beta(double x, double y) {
    if (!(x > 0.0) || !(y > 0.0)) {
        throw DomainError("log_beta requires x > 0 and y > 0");
    }
    const double big = std::max(x, y);
    const double small = std::min(x, y);
    // ln Gamma(small) - (ln Gamma(big + small) - ln Gamma(big))
    return log_gamma(small) - log_gamma_ratio(big, small);
}

double hurwitz_zeta(double s, double q) {
    if (!(s > 1.0) || !(q > 0.0)) {
        throw DomainError("hurwitz_zeta requires s > 1 and q > 0");
    }
    // B_{2j} / (2j)!
    static constexpr std::array<double, 8> b2j = {
        1.0 / 12.0,          -1.0 / 720.0,          1.0 / 30240.0,
        -1.0 / 1209600.0,    1.0 / 47900160.0,      -691.0 / 1307674368000.0,
        1.0 / 74724249600.0, -3617.0 / 10670622842880000.0};
    constexpr int kHead = 24;
    double head = 0.0;
    for (int k = kHead - 1; k >= 0; --k) {
        head += std::pow(k + q, -s);
    }
    const double x = kHead + q;
    double tail = std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s);
    // Rising product s (s+1) ... (s+2j-2) times x^{-s-2j+1}.
    double rising = s;
    double xp = std::pow(x, -s - 1.0);
    for (std::size_t j = 0; j < b2j.size(); ++j) {
        tail += b2j[j] * rising * xp;
        rising *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
        xp /= x * x;
    }
    return head + tail;
}

}  // namespace genhilbert
