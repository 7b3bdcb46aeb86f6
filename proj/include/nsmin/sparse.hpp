#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Core>

#include "nsmin/costs.hpp"
#include "nsmin/engine.hpp"
#include "nsmin/rng.hpp"

namespace nsmin {

/// Structured sparse regression instance: per-round Gaussian designs A (m x dim),
/// responses y = A x* + noise, and x* with k consecutive ones.
struct SparseInstance {
    int dim = 10;
    int samples_per_round = 100;
    int k = 2;
    double lambda_reg = 1.0;
    double noise_sd = 0.01;
    int support_offset = 1; ///< first (1-indexed) coordinate of the block of ones
    Vector x_star;

    static SparseInstance make(int dim, int samples_per_round, int k, double lambda_reg, double noise_sd,
                               int support_offset = 1);
};

struct RoundData {
    Eigen::MatrixXd A;
    Vector y;
};

/// max(S) - min(S) + 1 for nonempty S, 0 for the empty set.
double range_regularizer(const Subset& s);

/// Draws A row-major, then the noise vector; m*dim + m normal draws.
RoundData gen_round_data(const SparseInstance& inst, RngStream& rng);

/// min over x supported on S of ||A x - y||^2. Rank-tolerant: singular values of
/// A_S below 1e-10 times the largest are treated as zero.
double restricted_ls_value(const RoundData& rd, const Subset& s);

/// ||y||^2 - restricted_ls_value(rd, S). Rounding negatives within 1e-9 (relative to
/// ||y||^2) are clamped to 0; larger negatives raise IntegrityError.
double h_value(const RoundData& rd, const Subset& s);

/// h over all 2^dim supports in one pass.
///
/// Walks subsets depth-first adding columns in increasing index order and
/// extends a Cholesky factor of the Gram submatrix by one row per step, so
/// each h(S) costs O(|S|^2) given its parent. A column whose squared distance
/// to the span of the accepted columns falls below 1e-12 of its squared norm
/// is treated as dependent and contributes nothing.
TabularSetFunction h_table(const RoundData& rd);

inline constexpr int kMaxMemoizedDim = 12;

/// fbar = lambda * range regularizer, funder = h. funder is materialized as a
/// table when dim <= 12, otherwise each query solves its own least-squares problem.
DecomposedCost make_sparse_cost(const SparseInstance& inst, const RoundData& rd);

struct SparseCalibration {
    double lambda_reg = 0.0;
    double L = 0.0;
    double pilot_h_full_max = 0.0;
    int pilot_rounds = 0;
};

/// Pilot on RngStream(seed, kPilotStream). Default lambda balances lambda * dim
/// against h([dim]) of the first pilot round; L = 1.1 * (lambda * dim + max h([dim])).
SparseCalibration calibrate(const SparseInstance& inst, std::uint64_t seed, int pilot_rounds = 50,
                            std::optional<double> lambda_override = {});

class SparseCostStream : public CostStream {
public:
    SparseCostStream(SparseInstance inst, std::uint64_t seed);

    int n() const override { return inst_.dim; }
    DecomposedCost next() override;
    const SparseInstance& instance() const { return inst_; }

private:
    SparseInstance inst_;
    RngStream rng_;
};

} // namespace nsmin
