#include "nsmin/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <string>

#include <Eigen/Dense>

#include "nsmin/errors.hpp"

namespace nsmin {

SparseInstance SparseInstance::make(int dim, int samples_per_round, int k, double lambda_reg,
                                    double noise_sd, int support_offset)
{
    if (dim < 1 || dim > kMaxGroundSize)
        throw InvalidArgument("sparse instance dimension must lie in [1, 64]");
    if (samples_per_round < 1)
        throw InvalidArgument("sparse instance needs at least one sample per round");
    if (k < 1 || k > dim)
        throw InvalidArgument("sparsity k must satisfy 1 <= k <= dim");
    if (support_offset < 1 || support_offset + k - 1 > dim)
        throw InvalidArgument("block of ones starting at " + std::to_string(support_offset) +
                              " does not fit in dimension " + std::to_string(dim));
    if (!(noise_sd >= 0.0))
        throw InvalidArgument("noise standard deviation must be nonnegative");
    if (!(lambda_reg >= 0.0))
        throw InvalidArgument("regularization weight must be nonnegative");

    SparseInstance inst;
    inst.dim = dim;
    inst.samples_per_round = samples_per_round;
    inst.k = k;
    inst.lambda_reg = lambda_reg;
    inst.noise_sd = noise_sd;
    inst.support_offset = support_offset;
    inst.x_star = Vector::Zero(dim);
    inst.x_star.segment(support_offset - 1, k).setOnes();
    return inst;
}

double range_regularizer(const Subset& s)
{
    if (s.is_empty())
        return 0.0;
    return static_cast<double>(s.max_element() - s.min_element() + 1);
}

RoundData gen_round_data(const SparseInstance& inst, RngStream& rng)
{
    const int m = inst.samples_per_round;
    RoundData rd;
    rd.A.resize(m, inst.dim);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < inst.dim; ++c)
            rd.A(r, c) = rng.normal();
    Vector noise(m);
    for (int r = 0; r < m; ++r)
        noise(r) = rng.normal(0.0, inst.noise_sd);
    rd.y = rd.A * inst.x_star + noise;
    return rd;
}

namespace {

Eigen::MatrixXd support_columns(const RoundData& rd, const Subset& s)
{
    if (s.n() != rd.A.cols())
        throw InvalidArgument("support over [" + std::to_string(s.n()) + "] used with " +
                              std::to_string(rd.A.cols()) + " columns");
    const auto idx = s.elements();
    Eigen::MatrixXd cols(rd.A.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j)
        cols.col(static_cast<Eigen::Index>(j)) = rd.A.col(idx[j] - 1);
    return cols;
}

} // namespace

double restricted_ls_value(const RoundData& rd, const Subset& s)
{
    const Eigen::MatrixXd cols = support_columns(rd, s);
    if (cols.cols() == 0)
        return rd.y.squaredNorm();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(cols, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-10);
    const Vector x = svd.solve(rd.y);
    return (cols * x - rd.y).squaredNorm();
}

double h_value(const RoundData& rd, const Subset& s)
{
    const double total = rd.y.squaredNorm();
    const double h = total - restricted_ls_value(rd, s);
    if (h < 0.0) {
        if (h < -1e-9 * std::max(1.0, total))
            throw IntegrityError("restricted least squares exceeded ||y||^2 by " + std::to_string(-h) +
                                 " at support " + s.to_hex());
        return 0.0;
    }
    return h;
}

TabularSetFunction h_table(const RoundData& rd)
{
    const int dim = static_cast<int>(rd.A.cols());
    if (dim > kMaxEnumerableSize)
        throw CapacityError("h_table limited to dim <= " + std::to_string(kMaxEnumerableSize));

    const Eigen::MatrixXd gram = rd.A.transpose() * rd.A;
    const Vector corr = rd.A.transpose() * rd.y;

    TabularSetFunction table(dim);
    Eigen::MatrixXd chol = Eigen::MatrixXd::Zero(dim, dim);
    Vector z = Vector::Zero(dim);
    Vector row(dim);
    std::vector<int> accepted;
    accepted.reserve(dim);

    std::function<void(std::uint64_t, int, double)> visit = [&](std::uint64_t mask, int last, double h) {
        table.at(mask) = h;
        const int k = static_cast<int>(accepted.size());
        for (int j = last + 1; j < dim; ++j) {
            // Forward substitution: chol[0:k, 0:k] * l = gram(accepted, j).
            for (int r = 0; r < k; ++r) {
                double acc = gram(accepted[r], j);
                for (int c = 0; c < r; ++c)
                    acc -= chol(r, c) * row(c);
                row(r) = acc / chol(r, r);
            }
            const double residual = gram(j, j) - row.head(k).squaredNorm();
            const std::uint64_t child = mask | (std::uint64_t{1} << j);
            if (residual > 1e-12 * gram(j, j)) {
                const double pivot = std::sqrt(residual);
                chol.row(k).head(k) = row.head(k).transpose();
                chol(k, k) = pivot;
                z(k) = (corr(j) - row.head(k).dot(z.head(k))) / pivot;
                accepted.push_back(j);
                visit(child, j, h + z(k) * z(k));
                accepted.pop_back();
            } else {
                visit(child, j, h);
            }
        }
    };
    visit(0, -1, 0.0);
    return table;
}

DecomposedCost make_sparse_cost(const SparseInstance& inst, const RoundData& rd)
{
    if (rd.A.cols() != inst.dim)
        throw InvalidArgument("round data does not match instance dimension");
    DecomposedCost c;
    c.n = inst.dim;
    c.fbar = [lambda = inst.lambda_reg](const Subset& s) { return lambda * range_regularizer(s); };
    if (inst.dim <= kMaxMemoizedDim) {
        c.funder = h_table(rd).oracle();
    } else {
        auto shared = std::make_shared<const RoundData>(rd);
        c.funder = [shared](const Subset& s) { return h_value(*shared, s); };
    }
    return c;
}

SparseCalibration calibrate(const SparseInstance& inst, std::uint64_t seed, int pilot_rounds,
                            std::optional<double> lambda_override)
{
    if (pilot_rounds < 1)
        throw InvalidArgument("calibration needs at least one pilot round");
    RngStream rng(seed, kPilotStream);
    const Subset all = Subset::full(inst.dim);
    SparseCalibration cal;
    cal.pilot_rounds = pilot_rounds;
    double first = 0.0;
    for (int r = 0; r < pilot_rounds; ++r) {
        const double h = h_value(gen_round_data(inst, rng), all);
        if (r == 0)
            first = h;
        cal.pilot_h_full_max = std::max(cal.pilot_h_full_max, h);
    }
    cal.lambda_reg = lambda_override ? *lambda_override : first / inst.dim;
    cal.L = 1.1 * (cal.lambda_reg * inst.dim + cal.pilot_h_full_max);
    return cal;
}

SparseCostStream::SparseCostStream(SparseInstance inst, std::uint64_t seed)
    : inst_(std::move(inst)), rng_(seed, kDataStream)
{
}

DecomposedCost SparseCostStream::next()
{
    return make_sparse_cost(inst_, gen_round_data(inst_, rng_));
}

} // namespace nsmin
