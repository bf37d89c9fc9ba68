#pragma once

#include <cstddef>
#include <vector>

#include "genhilbert/measure.hpp"
#include "genhilbert/sequence_generator.hpp"
#include "genhilbert/series.hpp"

namespace genhilbert::detail {

// Certified rows (H a)(n) = sum_m entries[n][m] a_m for an infinite generator.
// Holds lazily grown log tables shared by all rows, so it is not thread-safe;
// use one instance per thread.
class RowEvaluator {
public:
    RowEvaluator(const OperatorParams& params, const Measure& mu, const Generator& gen, double tol,
                 std::size_t max_terms);

    // Enclosure with width <= tol * hi; [inf, inf] when the row series diverges.
    Interval row(std::size_t n);

    // True when some density component makes every row diverge.
    bool rows_diverge() const noexcept { return diverges_; }

private:
    struct DensityState {
        BetaComponent c;
        double log_coef;
        // Decay exponent of m -> entries[n][m] a_m.
        double kappa;
        // ln Gamma(m+a)/Gamma(m+alpha+1) + ln a_m, indexed by m.
        std::vector<double> log_ea;
        // -ln Gamma(j+a+b)/Gamma(j+beta+1), indexed by j = m + n.
        std::vector<double> log_g;
    };

    Interval density_row(DensityState& d, std::size_t n);
    Interval atom_row(const Atom& atom, std::size_t n);
    double log_a(std::size_t m);
    void grow_density(DensityState& d, std::size_t m_end, std::size_t j_end);

    OperatorParams params_;
    Generator gen_;
    double tol_;
    std::size_t max_terms_;
    std::vector<Atom> atoms_;
    std::vector<DensityState> densities_;
    std::vector<double> log_a_;
    bool diverges_ = false;
};

}  // namespace genhilbert::detail
