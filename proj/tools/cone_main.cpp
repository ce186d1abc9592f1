// Command-line front end: cone validation, graph ingestion, power functions,
// mean maps, variance operators, dual realizations, sampling and the
// counterexample fixtures.
//
// Exit codes: 0 success, 1 validation failure, 2 domain error (not in cone /
// not homogeneous / shape outside the Gindikin set), 3 I/O or parse error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "homcone/dual.hpp"
#include "homcone/montecarlo.hpp"
#include "homcone/power.hpp"
#include "homcone/structure.hpp"
#include "homcone/triangular.hpp"
#include "homcone/validation.hpp"
#include "homcone/wishart.hpp"

namespace {

using namespace homcone;

constexpr int kExitValidation = 1;
constexpr int kExitDomain = 2;
constexpr int kExitParse = 3;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void print_matrix(const Matrix& m) {
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            std::cout << (j ? " " : "") << fmt(m(i, j));
        }
        std::cout << "\n";
    }
}

Vector parse_shape(const std::string& text) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            vals.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ParseError("cannot parse shape entry: " + item);
        }
    }
    if (vals.empty()) throw ParseError("empty shape vector");
    Vector s(static_cast<Eigen::Index>(vals.size()));
    for (size_t i = 0; i < vals.size(); ++i) s[i] = vals[i];
    return s;
}

// A cone spec is either a preset name ("sym(n)", "vinberg", "dual_vinberg")
// or a path to a cone-spec JSON file.
BlockStructure load_spec(const std::string& arg) {
    if (arg == "vinberg" || arg == "dual_vinberg" || arg.rfind("sym(", 0) == 0) {
        return preset(arg);
    }
    return load_structure(arg);
}

// Points are given as full N x N matrices and projected onto Z_V on input.
Matrix load_point(const BlockStructure& s, const std::string& path) {
    Matrix m = load_matrix(path);
    if (m.rows() != s.size() || m.cols() != s.size()) {
        throw ParseError("point size does not match the cone spec file");
    }
    if (!s.in_space(m, 1e-8)) {
        throw NotInSpace("point is not in the block space of this structure");
    }
    return s.project(0.5 * (m + m.transpose()));
}

struct Options {
    std::string spec_path;
    std::string point_path;
    std::string theta_path;
    std::string out_path;
    std::string shape_text;
    std::string which = "Delta";
    std::string side = "Q";
    std::string apply_path;
    bool json = false;
    int degree = 1;
    int count = 1000;
    std::uint64_t seed = 0;
};

int cmd_validate(const Options& opt) {
    BlockStructure s = load_spec(opt.spec_path);
    StructureReport rep = validate_structure(s);
    auto line = [](const char* name, double residual, bool pass) {
        std::cout << name << ": " << (pass ? "pass" : "FAIL")
                  << " (worst residual " << fmt(residual) << ")\n";
    };
    line("V1", rep.v1_residual, rep.v1_pass);
    line("V2", rep.v2_residual, rep.v2_pass);
    line("V3", rep.v3_residual, rep.v3_pass);
    std::cout << "z-basis orthonormality residual: " << fmt(rep.orthonormality_residual)
              << "\n";
    std::cout << "tolerance: " << fmt(rep.tolerance) << "\n";
    std::cout << (rep.pass() ? "structure is valid" : "structure is INVALID") << "\n";
    return rep.pass() ? 0 : kExitValidation;
}

int cmd_from_graph(const Options& opt) {
    Graph g = load_graph(opt.spec_path);
    auto res = structure_from_graph(g);
    save_structure(opt.out_path, res.structure);
    std::cout << "vertex order (original labels):";
    for (int v : res.ordering) std::cout << " " << (v + 1);
    std::cout << "\nwrote " << opt.out_path << "\n";
    return 0;
}

int cmd_power(const Options& opt) {
    BlockStructure s = load_spec(opt.spec_path);
    Vector shape = parse_shape(opt.shape_text);
    Matrix point = load_point(s, opt.point_path);
    double value = 0.0;
    if (opt.which == "Delta") {
        value = power_cone(s, shape, point);
    } else if (opt.which == "delta") {
        value = power_dual(s, shape, point);
    } else {
        throw ParseError("--which must be Delta or delta");
    }
    std::cout << fmt(value) << "\n";
    return 0;
}

int cmd_map(const std::string& name, const Options& opt) {
    BlockStructure s = load_spec(opt.spec_path);
    Matrix point = load_point(s, opt.point_path);
    Matrix result;
    if (name == "mean") {
        result = mean_Q(s, parse_shape(opt.shape_text), point);
    } else if (name == "invmean") {
        result = inverse_mean_Q(s, parse_shape(opt.shape_text), point);
    } else {
        result = lauritzen(s, point);
    }
    print_matrix(result);
    return 0;
}

int cmd_variance(const Options& opt) {
    BlockStructure s = load_spec(opt.spec_path);
    Vector shape = parse_shape(opt.shape_text);
    Matrix point = load_point(s, opt.point_path);
    ZOperator op = (opt.side == "P") ? variance_P(s, shape, point)
                                     : variance_Q(s, shape, point);
    if (!opt.apply_path.empty()) {
        Matrix direction = load_point(s, opt.apply_path);
        print_matrix(op.apply(direction));
    } else {
        print_matrix(op.coords());
    }
    return 0;
}

int cmd_gindikin(const Options& opt) {
    BlockStructure s = load_spec(opt.spec_path);
    Vector shape = parse_shape(opt.shape_text);
    GindikinClass g = gindikin(s, opt.side == "P" ? Side::P : Side::Q, shape);
    if (!g.in_set()) {
        std::cout << "not-in-set\n";
        return kExitDomain;
    }
    std::cout << "epsilon:";
    for (int e : *g.epsilon) std::cout << " " << e;
    std::cout << "\n" << (g.nondegenerate ? "nondegenerate" : "degenerate") << "\n";
    return 0;
}

int cmd_dualize(const Options& opt) {
    BlockStructure s = load_spec(opt.spec_path);
    DualRealization real = dualize(s);
    std::ofstream out(opt.out_path);
    if (!out) throw ParseError("cannot write file: " + opt.out_path);
    out << dual_to_json(real) << "\n";
    std::cout << "ambient dimension: " << real.ambient_dim() << "\n";
    std::cout << "target sizes:";
    for (int n : real.target.sizes()) std::cout << " " << n;
    std::cout << "\nwrote " << opt.out_path << "\n";
    return 0;
}

int cmd_sample(const Options& opt) {
    BlockStructure s = load_spec(opt.spec_path);
    Matrix theta = load_point(s, opt.theta_path);
    SampleBatch batch = sample(s, theta, opt.degree, opt.count, opt.seed);
    save_batch(opt.out_path, s, batch);
    std::cout << "wrote " << opt.count << " samples to " << opt.out_path << "\n";
    return 0;
}

int cmd_check_moments(const Options& opt) {
    BlockStructure s = load_spec(opt.spec_path);
    Matrix theta = load_point(s, opt.theta_path);
    BatchFile file = load_batch(opt.point_path);
    if (file.structure_hash != structure_hash(s)) {
        throw ParseError("structure hash mismatch: batch was drawn on a different cone");
    }
    if (file.theta_hash != matrix_hash(theta)) {
        throw ParseError("theta hash mismatch: batch was drawn at a different parameter");
    }
    SampleBatch batch{theta, file.degree, file.seed, file.coords};
    Moments mom = empirical_moments(s, batch);

    Vector shape(s.rank());
    for (int k = 0; k < s.rank(); ++k) shape[k] = 0.5 * file.degree * s.sizes()[k];
    Matrix mean_closed = mean_Q(s, shape, theta);
    Matrix cov_closed = variance_Q(s, shape, mean_closed).coords();

    Vector mean_diff = s.coords(mom.mean) - s.coords(mean_closed);
    double worst_mean = 0.0;
    for (int a = 0; a < s.dim_z(); ++a) {
        worst_mean = std::max(worst_mean, std::abs(mean_diff[a]) / mom.mean_se[a]);
    }
    double worst_cov = 0.0;
    for (int a = 0; a < s.dim_z(); ++a) {
        for (int b = 0; b < s.dim_z(); ++b) {
            worst_cov = std::max(worst_cov, std::abs(mom.cov(a, b) - cov_closed(a, b)) /
                                                mom.cov_se(a, b));
        }
    }
    const bool mean_ok = worst_mean <= 4.0;
    const bool cov_ok = worst_cov <= 5.0;
    std::cout << "samples: " << batch.count() << ", degree k = " << file.degree
              << ", shape = (k/2) n\n";
    std::cout << "mean:       worst |z| = " << fmt(worst_mean) << " (threshold 4)  "
              << (mean_ok ? "pass" : "FAIL") << "\n";
    std::cout << "covariance: worst |z| = " << fmt(worst_cov) << " (threshold 5)  "
              << (cov_ok ? "pass" : "FAIL") << "\n";
    std::cout << "thresholds are per entry; note the " << s.dim_z() * (s.dim_z() + 3) / 2
              << " simultaneous comparisons when reading borderline values (Bonferroni)\n";
    return (mean_ok && cov_ok) ? 0 : kExitValidation;
}

int cmd_fixtures(const Options& opt) {
    auto reports = run_all_fixtures();
    bool all_pass = true;
    if (opt.json) {
        std::cout << "[";
        for (size_t i = 0; i < reports.size(); ++i) {
            std::cout << (i ? "," : "") << reports[i].to_json();
            all_pass = all_pass && reports[i].pass();
        }
        std::cout << "]\n";
    } else {
        for (const auto& rep : reports) {
            std::cout << rep.to_text();
            all_pass = all_pass && rep.pass();
        }
    }
    return all_pass ? 0 : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wishart exponential families on homogeneous cones in matrix realization"};
    app.require_subcommand(1);
    Options opt;

    auto* validate = app.add_subcommand("validate", "check V1-V3 for a cone spec");
    validate->add_option("spec", opt.spec_path, "cone-spec JSON file")->required();

    auto* from_graph =
        app.add_subcommand("from-graph", "build the structure of a homogeneous graph");
    from_graph->add_option("graph", opt.spec_path, "edge-list file")->required();
    from_graph->add_option("-o,--output", opt.out_path, "output cone-spec JSON")->required();

    auto* power = app.add_subcommand("power", "evaluate a generalized power function");
    power->add_option("--spec", opt.spec_path)->required();
    power->add_option("--s", opt.shape_text, "comma-separated shape")->required();
    power->add_option("--point", opt.point_path)->required();
    power->add_option("--which", opt.which, "Delta (on P_V) or delta (on Q_V)");

    for (const char* name : {"mean", "invmean", "lauritzen"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--spec", opt.spec_path)->required();
        if (std::string(name) != "lauritzen") {
            sub->add_option("--s", opt.shape_text)->required();
        }
        sub->add_option("--point", opt.point_path)->required();
    }
    app.get_subcommand("mean")->description("mean of the Q-side family at theta");
    app.get_subcommand("invmean")->description("inverse mean map on Q_V");
    app.get_subcommand("lauritzen")->description("inverse completion map hat(m)^{-1}");

    auto* variance = app.add_subcommand("variance", "variance operator in z coordinates");
    variance->add_option("--side", opt.side, "Q or P")->check(CLI::IsMember({"Q", "P"}));
    variance->add_option("--spec", opt.spec_path)->required();
    variance->add_option("--s", opt.shape_text)->required();
    variance->add_option("--point", opt.point_path)->required();
    variance->add_option("--apply", opt.apply_path, "apply the operator to this direction");

    auto* gindikin_cmd = app.add_subcommand("gindikin", "classify a shape in the Gindikin set");
    gindikin_cmd->add_option("--side", opt.side, "Q or P")->check(CLI::IsMember({"Q", "P"}));
    gindikin_cmd->add_option("--spec", opt.spec_path)->required();
    gindikin_cmd->add_option("--s", opt.shape_text)->required();

    auto* dualize_cmd = app.add_subcommand("dualize", "matrix realization of the dual cone");
    dualize_cmd->add_option("spec", opt.spec_path)->required();
    dualize_cmd->add_option("-o,--output", opt.out_path, "output bundle JSON")->required();

    auto* sample_cmd = app.add_subcommand("sample", "draw Wishart samples on Q_V");
    sample_cmd->add_option("--spec", opt.spec_path)->required();
    sample_cmd->add_option("--theta", opt.theta_path)->required();
    sample_cmd->add_option("--k", opt.degree, "degree (shape = (k/2) n)")->required();
    sample_cmd->add_option("--n", opt.count, "number of samples")->required();
    sample_cmd->add_option("--seed", opt.seed);
    sample_cmd->add_option("-o,--output", opt.out_path)->required();

    auto* check = app.add_subcommand("check-moments",
                                     "compare a sample batch against the closed forms");
    check->add_option("batch", opt.point_path, "batch file from `cone sample`")->required();
    check->add_option("--spec", opt.spec_path)->required();
    check->add_option("--theta", opt.theta_path)->required();

    auto* fixtures = app.add_subcommand("fixtures", "run the counterexample fixtures");
    fixtures->add_flag("--json", opt.json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        if (validate->parsed()) return cmd_validate(opt);
        if (from_graph->parsed()) return cmd_from_graph(opt);
        if (power->parsed()) return cmd_power(opt);
        for (const char* name : {"mean", "invmean", "lauritzen"}) {
            if (app.get_subcommand(name)->parsed()) return cmd_map(name, opt);
        }
        if (variance->parsed()) return cmd_variance(opt);
        if (gindikin_cmd->parsed()) return cmd_gindikin(opt);
        if (dualize_cmd->parsed()) return cmd_dualize(opt);
        if (sample_cmd->parsed()) return cmd_sample(opt);
        if (check->parsed()) return cmd_check_moments(opt);
        if (fixtures->parsed()) return cmd_fixtures(opt);
    } catch (const NotHomogeneous& e) {
        std::cerr << "error: " << e.what() << "\nwitness:";
        for (int v : e.witness) std::cerr << " " << v;
        std::cerr << "\n";
        return kExitDomain;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const DimensionMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ConeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return 0;
}
