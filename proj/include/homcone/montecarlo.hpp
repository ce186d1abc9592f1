#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "homcone/structure.hpp"
#include "homcone/wishart.hpp"

namespace homcone {

/// A batch of exact draws from the Q_V-side Wishart family with shape
/// (k/2) n and natural parameter theta: W = pi(sum_{j<=k} z_j z_j^T) with
/// z_j ~ N(0, theta^{-1}/2).  Samples are stored as z-basis coordinate rows.
struct SampleBatch {
    Matrix theta;
    int degree = 0;          // k
    std::uint64_t seed = 0;
    Matrix coords;           // M x dim_z

    int count() const { return static_cast<int>(coords.rows()); }
};

/// Deterministic under a fixed seed; draws are generated in sub-batches with
/// independent streams derived from (seed, stream index).
SampleBatch sample(const BlockStructure& s, const Matrix& theta, int degree, int count,
                   std::uint64_t seed);

struct Moments {
    Matrix mean;        // in Z_V
    Vector mean_se;     // per z-coordinate standard error
    Matrix cov;         // dim_z x dim_z sample covariance in z coordinates
    Matrix cov_se;      // entrywise standard errors of cov
};

/// Sample mean and covariance operator in z-basis coordinates with
/// per-entry standard errors.  Requires at least two samples.
Moments empirical_moments(const BlockStructure& s, const SampleBatch& batch);

/// Text export: header line with structure hash, theta hash, k, M, seed,
/// then one coordinate row per sample (17 significant digits).
void write_batch(std::ostream& out, const BlockStructure& s, const SampleBatch& batch);
void save_batch(const std::string& path, const BlockStructure& s, const SampleBatch& batch);

struct BatchFile {
    std::string structure_hash;
    std::string theta_hash;
    int degree = 0;
    std::uint64_t seed = 0;
    Matrix coords;
};

BatchFile read_batch(std::istream& in);
BatchFile load_batch(const std::string& path);

}  // namespace homcone
