// Batch front-end: ingest series or images, pick an instance from a JSON
// config, run scans or axiom checks, emit CSV-style text on stdout.
//
// Exit codes: 0 success, 1 parse/usage error, 2 validation error
// (dimension, endpoint or boundary mismatch), 3 numeric failure.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fscan/fscan.hpp"

using namespace fscan;

namespace {

struct RunConfig {
    std::string instance;
    std::uint32_t truncation = 4;
    unsigned workers = 0;  // 0 = unset
    std::uint64_t seed = 42;
    std::string op = "sum";          // abelian2d: sum | max
    std::string semiring = "real";   // mat: real | tropical
    std::vector<std::size_t> dims;   // mat objects
    std::array<std::size_t, 3> gldims{2, 1, 3};
    double edge_tolerance = 1e-9;   // G-equality for composition/validation
    double axiom_threshold = 1e-8;  // failure threshold for `check`
    std::map<std::pair<std::size_t, std::size_t>, DenseMatrix> embedding_templates;
    SSMParams ssm;
    ImageParams image_params = ImageParams::defaults();
};

const std::vector<std::string> kInstances{"sum", "max",       "product", "ssm", "iss",
                                          "iis", "mat",       "abelian2d", "glimage"};

std::string resolve_path(const std::filesystem::path& base, const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_absolute()) return p.string();
    return (base / p).string();
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    const auto base = std::filesystem::path(path).parent_path();
    RunConfig cfg;
    try {
        cfg.instance = j.at("instance").get<std::string>();
        if (std::find(kInstances.begin(), kInstances.end(), cfg.instance) == kInstances.end())
            throw ParseError("unknown instance '" + cfg.instance + "'");
        if (j.contains("truncation")) cfg.truncation = j["truncation"].get<std::uint32_t>();
        if (j.contains("workers")) cfg.workers = j["workers"].get<unsigned>();
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("op")) cfg.op = j["op"].get<std::string>();
        if (j.contains("semiring")) cfg.semiring = j["semiring"].get<std::string>();
        if (j.contains("dims")) cfg.dims = j["dims"].get<std::vector<std::size_t>>();
        if (j.contains("gldims")) {
            const auto v = j["gldims"].get<std::vector<std::size_t>>();
            if (v.size() != 3) throw ParseError("gldims must hold three integers");
            cfg.gldims = {v[0], v[1], v[2]};
        }
        if (j.contains("tolerance")) {
            const auto& t = j["tolerance"];
            if (t.contains("edge")) cfg.edge_tolerance = t["edge"].get<double>();
            if (t.contains("axiom")) cfg.axiom_threshold = t["axiom"].get<double>();
        }
        if (j.contains("embeddings")) {
            for (const auto& [key, value] : j["embeddings"].items()) {
                std::size_t r = 0, c = 0;
                if (std::sscanf(key.c_str(), "%zux%zu", &r, &c) != 2)
                    throw ParseError("embedding key '" + key + "' must look like '3x2'");
                DenseMatrix m = read_matrix_file(resolve_path(base, value.get<std::string>()));
                if (m.rows() != r || m.cols() != c)
                    throw DimensionMismatch("embedding template '" + key +
                                            "' has mismatched file contents");
                if (cfg.semiring == "tropical") tropical_canonicalize(m);
                cfg.embedding_templates[{r, c}] = std::move(m);
            }
        }
        if (j.contains("ssm")) {
            for (const auto& file : j["ssm"].at("A"))
                cfg.ssm.coefficients.push_back(
                    read_matrix_file(resolve_path(base, file.get<std::string>())));
        }
        if (j.contains("glimage")) {
            const auto& g = j["glimage"];
            if (g.contains("A"))
                for (int k = 0; k < 3; ++k)
                    cfg.image_params.a[k] =
                        read_matrix_file(resolve_path(base, g.at("A").at(k).get<std::string>()));
            if (g.contains("Q"))
                for (int k = 0; k < 3; ++k)
                    cfg.image_params.q[k] =
                        read_matrix_file(resolve_path(base, g.at("Q").at(k).get<std::string>()));
            if (g.contains("s")) {
                const auto v = g["s"].get<std::vector<double>>();
                if (v.size() != 3) throw ParseError("glimage.s must hold three scalars");
                for (int k = 0; k < 3; ++k) cfg.image_params.s[k] = v[k];
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return cfg;
}

unsigned resolve_workers(unsigned cli_value, unsigned config_value) {
    if (cli_value > 0) return cli_value;
    if (config_value > 0) return config_value;
    if (const char* env = std::getenv("FSCAN_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return detail::default_workers();
}

// ---------------------------------------------------------------------------
// Output formats. Scalars are 17-significant-digit; tropical output spells
// the bottom element "-inf" like the input format does.

void print_scalar_prefixes(const std::vector<double>& values, bool tropical) {
    std::string line;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) line += ',';
        line += tropical ? format_tropical_scalar(values[i]) : format_scalar(values[i]);
    }
    std::fputs(line.c_str(), stdout);
    std::fputc('\n', stdout);
}

void print_matrix_block(const DenseMatrix& m, const std::string& label, bool tropical) {
    std::printf("%s%s%zux%zu\n", label.c_str(), label.empty() ? "" : " ", m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::string line;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) line += ',';
            line += tropical ? format_tropical_scalar(m(i, j)) : format_scalar(m(i, j));
        }
        std::fputs(line.c_str(), stdout);
        std::fputc('\n', stdout);
    }
}

std::string word_label(const Word& w) {
    if (w.empty()) return "e";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += '.';
        out += std::to_string(w[i]);
    }
    return out;
}

void print_tensor_block(const TensorElement& t, const std::string& label) {
    if (!label.empty()) std::printf("%s\n", label.c_str());
    for (const auto& [w, c] : t.terms)
        std::printf("%s:%s\n", word_label(w).c_str(), format_scalar(c).c_str());
}

// ---------------------------------------------------------------------------
// scan1d

struct ScanArgs {
    std::string input, config;
    std::vector<long long> interval;  // empty or {m, n}
    std::vector<long long> rect;      // empty or {s1, t1, s2, t2}
    unsigned workers = 0;
};

template <Category C, class Print>
void emit_scan1d(const IntervalAssignment<C>& asg, const C& cat, const ScanArgs& args,
                 unsigned workers, Print&& print_one) {
    if (args.interval.size() == 2) {
        print_one(lift(asg, {args.interval[0], args.interval[1]}, cat), std::string());
        return;
    }
    const auto result = scan_parallel(asg, cat, workers);
    for (std::size_t k = 0; k < result.prefixes.size(); ++k)
        print_one(result.prefixes[k], "k=" + std::to_string(k));
}

int run_scan1d(const ScanArgs& args) {
    const RunConfig cfg = load_config(args.config);
    const auto rows = read_series_file(args.input);
    const unsigned workers = resolve_workers(args.workers, cfg.workers);

    if (cfg.instance == "sum" || cfg.instance == "max" || cfg.instance == "product") {
        const auto xs = flatten_series(rows);
        std::vector<double> out;
        auto collect = [&out](double v, const std::string&) { out.push_back(v); };
        if (cfg.instance == "sum")
            emit_scan1d(make_sum_assignment(xs), SumCategory{}, args, workers, collect);
        else if (cfg.instance == "max")
            emit_scan1d(make_max_assignment(xs), MaxCategory{}, args, workers, collect);
        else
            emit_scan1d(make_product_assignment(xs), ProductCategory{}, args, workers, collect);
        print_scalar_prefixes(out, false);
        return 0;
    }
    if (cfg.instance == "ssm") {
        if (cfg.ssm.coefficients.empty())
            throw ParseError("instance 'ssm' needs config field ssm.A");
        const auto asg = make_ssm_assignment(rows, cfg.ssm);
        const MatrixGroupCategory cat{MatrixMonoid{cfg.ssm.state_dim()}};
        emit_scan1d(asg, cat, args, workers, [](const DenseMatrix& m, const std::string& label) {
            print_matrix_block(m, label, false);
        });
        return 0;
    }
    if (cfg.instance == "iss" || cfg.instance == "iis") {
        const bool sums = cfg.instance == "iss";
        const auto asg = sums ? make_iss_assignment(flatten_series(rows), cfg.truncation)
                              : make_iis_assignment(rows, cfg.truncation);
        const TensorCategory cat{TensorMonoid{
            cfg.truncation, sums ? WordDegree::sum_of_letters : WordDegree::length}};
        emit_scan1d(asg, cat, args, workers,
                    [](const TensorElement& t, const std::string& label) {
                        print_tensor_block(t, label);
                    });
        return 0;
    }
    if (cfg.instance == "mat") {
        if (cfg.dims.empty()) throw ParseError("instance 'mat' needs config field dims");
        if (cfg.embedding_templates.empty())
            throw ParseError("instance 'mat' needs config field embeddings");
        const auto xs = flatten_series(rows);
        const bool tropical = cfg.semiring == "tropical";
        auto print = [tropical](const DenseMatrix& m, const std::string& label) {
            print_matrix_block(m, label, tropical);
        };
        if (tropical) {
            const TropicalSemiring sr;
            const auto profile = scaled_template_profile(cfg.dims, cfg.embedding_templates, sr);
            emit_scan1d(make_mat_assignment(xs, profile, sr), MatCategory<TropicalSemiring>{sr},
                        args, workers, print);
        } else if (cfg.semiring == "real") {
            const RealSemiring sr;
            const auto profile = scaled_template_profile(cfg.dims, cfg.embedding_templates, sr);
            emit_scan1d(make_mat_assignment(xs, profile, sr), MatCategory<RealSemiring>{sr}, args,
                        workers, print);
        } else {
            throw ParseError("unknown semiring '" + cfg.semiring + "'");
        }
        return 0;
    }
    throw ParseError("instance '" + cfg.instance + "' is two-dimensional; use scan2d");
}

// ---------------------------------------------------------------------------
// scan2d

template <class XM>
void emit_scan2d_scalar(const TwoCellGridAssignment<XM>& grid, const XM& xm, const ScanArgs& args,
                        unsigned workers) {
    if (args.rect.size() == 4) {
        const auto cell = free_lift(
            grid, Rect{args.rect[0], args.rect[1], args.rect[2], args.rect[3]}, xm);
        print_scalar_prefixes({cell.face}, false);
        return;
    }
    const auto result = scan_2d(grid, xm, workers);
    for (std::size_t j = 1; j <= result.extent_y; ++j) {
        std::vector<double> line;
        line.reserve(result.extent_x);
        for (std::size_t i = 1; i <= result.extent_x; ++i) line.push_back(result.at(i, j).face);
        print_scalar_prefixes(line, false);
    }
}

int run_scan2d(const ScanArgs& args) {
    const RunConfig cfg = load_config(args.config);
    const unsigned workers = resolve_workers(args.workers, cfg.workers);
    if (cfg.instance == "abelian2d") {
        const auto grid_data = read_scalar_grid_file(args.input);
        if (cfg.op == "sum") {
            const AbelianSumCrossedModule xm;
            emit_scan2d_scalar(abelian_grid_assignment(grid_data.values, grid_data.m, grid_data.n, xm),
                               xm, args, workers);
        } else if (cfg.op == "max") {
            const AbelianMaxCrossedModule xm;
            emit_scan2d_scalar(abelian_grid_assignment(grid_data.values, grid_data.m, grid_data.n, xm),
                               xm, args, workers);
        } else {
            throw ParseError("abelian2d op must be 'sum' or 'max'");
        }
        return 0;
    }
    if (cfg.instance == "glimage") {
        const auto image = read_image_file(args.input);
        const GLCrossedModule xm(cfg.gldims[0], cfg.gldims[1], cfg.gldims[2], cfg.edge_tolerance);
        const auto grid = image_grid_assignment(image, cfg.image_params, xm);
        if (args.rect.size() == 4) {
            const auto cell = free_lift(
                grid, Rect{args.rect[0], args.rect[1], args.rect[2], args.rect[3]}, xm);
            print_matrix_block(cell.face.block, "face", false);
            return 0;
        }
        const auto result = scan_2d(grid, xm, workers);
        for (std::size_t j = 1; j <= result.extent_y; ++j)
            for (std::size_t i = 1; i <= result.extent_x; ++i)
                print_matrix_block(result.at(i, j).face.block,
                                   "i=" + std::to_string(i) + " j=" + std::to_string(j), false);
        return 0;
    }
    throw ParseError("instance '" + cfg.instance + "' is one-dimensional; use scan1d");
}

// ---------------------------------------------------------------------------
// check

struct CheckArgs {
    std::string config;
    std::size_t samples = 200;
    std::uint64_t seed = 1;
};

template <class XM>
void run_axiom_report(const XM& xm, const std::function<typename XM::G(std::mt19937_64&)>& sg,
                      const std::function<typename XM::H(std::mt19937_64&)>& sh,
                      std::size_t samples, std::uint64_t seed, double threshold = 1e-8) {
    auto report = check_crossed_module(xm, sg, sh, samples, seed, threshold);
    std::mt19937_64 rng(seed + 0x9e3779b9);
    AxiomResult assoc_h{"ASSOC_H"}, assoc_v{"ASSOC_V"}, interchange{"INTERCHANGE"},
        boundary{"BOUNDARY"};
    auto record = [&](AxiomResult& r, double v) {
        r.max_violation = std::max(r.max_violation, v);
        if (v > threshold) ++r.failures;
    };
    for (std::size_t t = 0; t < samples; ++t) {
        const auto row = random_h_composable_row(xm, sg, sh, rng, 3);
        record(assoc_h, two_cell_distance(compose_h(compose_h(row[0], row[1], xm), row[2], xm),
                                          compose_h(row[0], compose_h(row[1], row[2], xm), xm),
                                          xm));
        const auto col = random_v_composable_column(xm, sg, sh, rng, 3);
        record(assoc_v, two_cell_distance(compose_v(compose_v(col[0], col[1], xm), col[2], xm),
                                          compose_v(col[0], compose_v(col[1], col[2], xm), xm),
                                          xm));
        const auto quad = random_interchange_quad(xm, sg, sh, rng);
        record(interchange, interchange_violation(quad[0], quad[1], quad[2], quad[3], xm));
        record(boundary, boundary_violation(compose_h(quad[0], quad[1], xm), xm));
        record(boundary, boundary_violation(compose_v(quad[0], quad[2], xm), xm));
    }
    report.axioms.insert(report.axioms.end(), {assoc_h, assoc_v, interchange, boundary});
    for (const auto& axiom : report.axioms)
        std::printf("%s %s %zu\n", axiom.name.c_str(), format_scalar(axiom.max_violation).c_str(),
                    axiom.failures);
}

int run_check(const CheckArgs& args) {
    const RunConfig cfg = load_config(args.config);
    if (cfg.instance == "glimage") {
        const GLCrossedModule xm(cfg.gldims[0], cfg.gldims[1], cfg.gldims[2], cfg.edge_tolerance);
        run_axiom_report<GLCrossedModule>(
            xm, [&xm](std::mt19937_64& rng) { return xm.random_g(rng); },
            [&xm](std::mt19937_64& rng) { return xm.random_h(rng); }, args.samples, args.seed,
            cfg.axiom_threshold);
        return 0;
    }
    if (cfg.instance == "abelian2d" && cfg.op == "sum") {
        const AbelianSumCrossedModule xm;
        run_axiom_report<AbelianSumCrossedModule>(
            xm, [](std::mt19937_64&) { return TrivialGroupElement{}; },
            [](std::mt19937_64& rng) {
                std::uniform_real_distribution<double> dist(-5.0, 5.0);
                return dist(rng);
            },
            args.samples, args.seed, cfg.axiom_threshold);
        return 0;
    }
    throw ValidationError("check supports instances 'glimage' and 'abelian2d' (op sum)");
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
    std::vector<std::size_t> sizes{1 << 16};
    std::vector<unsigned> workers{1, 2, 4, 8};
    std::size_t dim = 32;
    std::uint64_t seed = 1;
};

int run_bench(const BenchArgs& args) {
    std::printf("cells,workers,seconds,compositions_per_second,speedup\n");
    for (std::size_t size : args.sizes) {
        const auto rows = run_matrix_bench(size, args.workers, args.dim, args.seed);
        for (const auto& row : rows)
            std::printf("%zu,%u,%.6g,%.6g,%.4g\n", row.cells, row.workers, row.seconds,
                        row.compositions_per_second, row.speedup);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"categorical prefix-scan aggregation over series and images"};
    app.require_subcommand(1);

    ScanArgs scan1, scan2;
    CheckArgs check;
    BenchArgs bench;

    auto* cmd1 = app.add_subcommand("scan1d", "prefix aggregates of a series");
    cmd1->add_option("--input", scan1.input, "series file (CSV)")->required();
    cmd1->add_option("--config", scan1.config, "JSON config")->required();
    cmd1->add_option("--interval", scan1.interval, "aggregate one interval [m, n]")->expected(2);
    cmd1->add_option("--workers", scan1.workers, "worker threads");

    auto* cmd2 = app.add_subcommand("scan2d", "prefix aggregates of a grid or image");
    cmd2->add_option("--input", scan2.input, "grid CSV or PPM image")->required();
    cmd2->add_option("--config", scan2.config, "JSON config")->required();
    cmd2->add_option("--rect", scan2.rect, "aggregate one rectangle s1 t1 s2 t2")->expected(4);
    cmd2->add_option("--workers", scan2.workers, "worker threads");

    auto* cmd3 = app.add_subcommand("check", "crossed-module and double-category axiom report");
    cmd3->add_option("--config", check.config, "JSON config")->required();
    cmd3->add_option("--samples", check.samples, "random samples per axiom");
    cmd3->add_option("--seed", check.seed, "RNG seed");

    auto* cmd4 = app.add_subcommand("bench", "scan throughput benchmark (CSV)");
    cmd4->add_option("--sizes", bench.sizes, "cell counts");
    cmd4->add_option("--workers", bench.workers, "worker counts (1 is always included)");
    cmd4->add_option("--dim", bench.dim, "matrix dimension");
    cmd4->add_option("--seed", bench.seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*cmd1) return run_scan1d(scan1);
        if (*cmd2) return run_scan2d(scan2);
        if (*cmd3) return run_check(check);
        return run_bench(bench);
    } catch (const fscan::ParseError& e) {
        std::fprintf(stderr, "fscan: %s\n", e.what());
        return 1;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "fscan: %s\n", e.what());
        return 2;
    } catch (const NumericError& e) {
        std::fprintf(stderr, "fscan: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "fscan: %s\n", e.what());
        return 1;
    }
}
