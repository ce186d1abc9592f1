#include "homcone/montecarlo.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "homcone/power.hpp"

namespace homcone {

namespace {

// Gaussian stream with explicit Box-Muller so that batches are bit-identical
// for a fixed seed regardless of the standard library.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform();  // (0, 1]
        double u2 = uniform();
        double radius = std::sqrt(-2.0 * std::log(u1));
        double angle = 2.0 * M_PI * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    double uniform() {
        return static_cast<double>(rng_() >> 11) * 0x1.0p-53;  // [0, 1)
    }

    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 over the pair
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

constexpr int kSubBatch = 4096;

}  // namespace

SampleBatch sample(const BlockStructure& s, const Matrix& theta, int degree, int count,
                   std::uint64_t seed) {
    if (degree < 1) throw InvalidShape("degree k must be at least 1");
    if (count < 1) throw InvalidShape("sample count must be at least 1");
    if (!in_cone(s, theta)) throw NotInCone("theta must lie in the open cone");

    const int N = s.size();
    // z ~ N(0, theta^{-1}/2):  z = R^{-T} eta / sqrt(2)  with  theta = R R^T.
    Eigen::LLT<Matrix> llt(0.5 * (theta + theta.transpose()));
    if (llt.info() != Eigen::Success) throw NotInCone("theta must be positive definite");
    Matrix root = llt.matrixL();
    Matrix sampler = root.transpose()
                         .triangularView<Eigen::Upper>()
                         .solve(Matrix::Identity(N, N)) /
                     std::sqrt(2.0);

    SampleBatch batch;
    batch.theta = theta;
    batch.degree = degree;
    batch.seed = seed;
    batch.coords.resize(count, s.dim_z());

    Vector eta(N);
    for (int start = 0, stream = 0; start < count; start += kSubBatch, ++stream) {
        GaussianStream gauss(stream_seed(seed, stream));
        const int stop = std::min(count, start + kSubBatch);
        for (int mIdx = start; mIdx < stop; ++mIdx) {
            Matrix w = Matrix::Zero(N, N);
            for (int j = 0; j < degree; ++j) {
                for (int a = 0; a < N; ++a) eta[a] = gauss.next();
                Vector z = sampler * eta;
                w.noalias() += z * z.transpose();
            }
            batch.coords.row(mIdx) = s.coords(w).transpose();
        }
    }
    return batch;
}

Moments empirical_moments(const BlockStructure& s, const SampleBatch& batch) {
    const int count = batch.count();
    if (count < 2) throw ConeError("at least two samples are required for moments");
    const int d = s.dim_z();
    if (batch.coords.cols() != d) throw DimensionMismatch("batch does not match the structure");

    Vector mean = batch.coords.colwise().mean();
    Matrix centered = batch.coords.rowwise() - mean.transpose();

    Moments mom;
    mom.mean = s.from_coords(mean);
    mom.mean_se.resize(d);
    for (int a = 0; a < d; ++a) {
        double var = centered.col(a).squaredNorm() / (count - 1);
        mom.mean_se[a] = std::sqrt(var / count);
    }

    mom.cov = (centered.transpose() * centered) / (count - 1);
    mom.cov_se.resize(d, d);
    for (int a = 0; a < d; ++a) {
        for (int b = a; b < d; ++b) {
            // delta method: SE of the sample covariance entry is
            // sd(u_a u_b) / sqrt(M)
            Vector prod = centered.col(a).cwiseProduct(centered.col(b));
            double pm = prod.mean();
            double pv = (prod.array() - pm).square().sum() / (count - 1);
            mom.cov_se(a, b) = mom.cov_se(b, a) = std::sqrt(pv / count);
        }
    }
    return mom;
}

void write_batch(std::ostream& out, const BlockStructure& s, const SampleBatch& batch) {
    char buf[40];
    out << "# homcone-samples structure=" << structure_hash(s)
        << " theta=" << matrix_hash(batch.theta) << " k=" << batch.degree
        << " M=" << batch.count() << " seed=" << batch.seed << "\n";
    for (int m = 0; m < batch.count(); ++m) {
        for (int a = 0; a < batch.coords.cols(); ++a) {
            std::snprintf(buf, sizeof(buf), "%.17g", batch.coords(m, a));
            out << (a ? " " : "") << buf;
        }
        out << "\n";
    }
}

void save_batch(const std::string& path, const BlockStructure& s, const SampleBatch& batch) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write file: " + path);
    write_batch(out, s, batch);
}

BatchFile read_batch(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw ParseError("empty sample file");
    BatchFile file;
    int count = -1;
    {
        std::istringstream hs(header);
        std::string tok;
        hs >> tok;  // '#'
        hs >> tok;  // format tag
        if (tok != "homcone-samples") throw ParseError("unrecognized sample file header");
        while (hs >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) continue;
            std::string key = tok.substr(0, eq), value = tok.substr(eq + 1);
            if (key == "structure") file.structure_hash = value;
            else if (key == "theta") file.theta_hash = value;
            else if (key == "k") file.degree = std::stoi(value);
            else if (key == "M") count = std::stoi(value);
            else if (key == "seed") file.seed = std::stoull(value);
        }
    }
    if (count < 0) throw ParseError("sample file header is missing M");
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<double> row;
        double v;
        while (ls >> v) row.push_back(v);
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (static_cast<int>(rows.size()) != count) {
        throw ParseError("sample file row count does not match header");
    }
    const int d = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    file.coords.resize(count, d);
    for (int m = 0; m < count; ++m) {
        if (static_cast<int>(rows[m].size()) != d) {
            throw ParseError("sample file rows have inconsistent lengths");
        }
        for (int a = 0; a < d; ++a) file.coords(m, a) = rows[m][a];
    }
    return file;
}

BatchFile load_batch(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    return read_batch(in);
}

}  // namespace homcone
