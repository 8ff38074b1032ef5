// Command line front end: encode anonymized trajectories onto a grid, mine
// top-k patterns, generate anonymized test data, or sweep the variants.

#include <chrono>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "trajmine/anonymize.hpp"
#include "trajmine/errors.hpp"
#include "trajmine/grid.hpp"
#include "trajmine/io.hpp"
#include "trajmine/miner.hpp"
#include "trajmine/oracle.hpp"
#include "trajmine/relevance.hpp"

using namespace trajmine;
using ojson = nlohmann::ordered_json;

namespace {

// Geometry arrives as text and is parsed exactly (decimals or "num/den"
// fractions); going through double would smuggle 2^50-scale denominators
// into the overlap arithmetic.
struct GridArgs {
    std::vector<std::string> region; // xmin,ymin,xmax,ymax
    std::string cell_width, cell_height;
    std::int64_t id_base = 0;

    bool given() const {
        return !region.empty() || !cell_width.empty() || !cell_height.empty();
    }
    CellGrid build() const {
        if (region.size() != 4 || cell_width.empty() || cell_height.empty())
            throw std::invalid_argument(
                "anon-jsonl input needs --region xmin,ymin,xmax,ymax, --cell-width and --cell-height");
        return build_grid(Box{Rational::parse(region[0]), Rational::parse(region[1]),
                              Rational::parse(region[2]), Rational::parse(region[3])},
                          Rational::parse(cell_width), Rational::parse(cell_height));
    }
};

void add_grid_options(CLI::App* cmd, GridArgs& g) {
    cmd->add_option("--region", g.region, "Grid region as xmin,ymin,xmax,ymax")
        ->delimiter(',')
        ->expected(1, 4);
    cmd->add_option("--cell-width", g.cell_width, "Grid cell width (decimal or num/den)");
    cmd->add_option("--cell-height", g.cell_height, "Grid cell height (decimal or num/den)");
    cmd->add_option("--id-base", g.id_base, "Cell id base for rendering (0 or 1)")
        ->check(CLI::IsMember({0, 1}));
}

std::unique_ptr<std::istream> open_input(const std::string& path) {
    if (path == "-") return std::make_unique<std::istream>(std::cin.rdbuf());
    auto f = std::make_unique<std::ifstream>(path);
    if (!*f) throw std::runtime_error("cannot open input file '" + path + "'");
    return f;
}

WlasDatabase load_database(const std::string& path, const std::string& format,
                           const GridArgs& grid_args) {
    auto in = open_input(path);
    if (format == "wlas-jsonl") return read_wlas_jsonl(*in, &std::cerr);
    auto trajs = read_anon_jsonl(*in);
    return encode_database(trajs, grid_args.build());
}

ojson grid_to_json(const GridArgs& g) {
    if (!g.given()) return nullptr;
    ojson j;
    j["region"] = g.region;
    j["cell_width"] = g.cell_width;
    j["cell_height"] = g.cell_height;
    return j;
}

int cmd_encode(const std::string& input, const std::string& format, const GridArgs& grid_args) {
    if (format == "wlas-jsonl") {
        auto in = open_input(input);
        WlasDatabase db = read_wlas_jsonl(*in, &std::cerr);
        write_wlas_jsonl(db, std::cout, grid_args.id_base);
    } else {
        auto in = open_input(input);
        auto trajs = read_anon_jsonl(*in);
        WlasDatabase db = encode_database(trajs, grid_args.build());
        write_wlas_jsonl(db, std::cout, grid_args.id_base);
    }
    return 0;
}

struct MineArgs {
    std::string input = "-";
    std::string format = "wlas-jsonl";
    std::string variant = "full";
    int k = 0;
    GridArgs grid;
    std::string metrics_out;
    bool oracle_check = false;
    bool no_prune = false;
    std::uint64_t seed = 0;
    // tri-state strategy overrides; unset means "as the variant says"
    std::optional<bool> ti, tu, width, depth;
};

MiningConfig make_config(const MineArgs& a) {
    MiningConfig c = MiningConfig::for_variant(a.variant, a.k);
    if (a.no_prune) {
        c.width_prune_enabled = false;
        c.depth_prune_enabled = false;
    }
    if (a.ti) c.ti_enabled = *a.ti;
    if (a.tu) c.tu_enabled = *a.tu;
    if (a.width) c.width_prune_enabled = *a.width;
    if (a.depth) c.depth_prune_enabled = *a.depth;
    return c;
}

int cmd_mine(const MineArgs& a) {
    WlasDatabase db = load_database(a.input, a.format, a.grid);
    MiningConfig config = make_config(a);

    auto t0 = std::chrono::steady_clock::now();
    MineResult mined = mine_topk(db, config);
    auto t1 = std::chrono::steady_clock::now();

    if (a.oracle_check) {
        auto expected = brute_topk(db, config.k);
        bool ok = expected.size() == mined.results.size();
        for (std::size_t i = 0; ok && i < expected.size(); ++i)
            ok = expected[i].score == mined.results[i].score &&
                 expected[i].pattern == mined.results[i].pattern;
        if (!ok) {
            std::cerr << "oracle check FAILED: miner and brute force disagree\n";
            std::cerr << "miner returned " << mined.results.size() << " patterns, oracle "
                      << expected.size() << "\n";
            return 3;
        }
        std::cerr << "oracle check passed (" << expected.size() << " patterns)\n";
    }

    ojson report;
    report["config"] = {{"k", config.k},
                        {"variant", a.variant},
                        {"ti", config.ti_enabled},
                        {"tu", config.tu_enabled},
                        {"width_prune", config.width_prune_enabled},
                        {"depth_prune", config.depth_prune_enabled},
                        {"input", a.input},
                        {"format", a.format},
                        {"grid", grid_to_json(a.grid)},
                        {"id_base", a.grid.id_base},
                        {"seed", a.seed}};
    report["results"] = results_to_json(mined.results, a.grid.id_base);
    report["metrics"] = metrics_to_json(mined.metrics);
    report["duration_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    std::cout << report.dump(2) << "\n";

    if (!a.metrics_out.empty()) {
        std::ofstream mf(a.metrics_out);
        if (!mf) throw std::runtime_error("cannot open metrics file '" + a.metrics_out + "'");
        mf << metrics_to_json(mined.metrics).dump(2) << "\n";
    }
    return 0;
}

int cmd_anonymize(const std::string& input, const AnonymizeConfig& config) {
    auto in = open_input(input);
    auto raw = read_raw_jsonl(*in);
    auto anon = toy_anonymize(raw, config);
    validate_anonymization(raw, anon, config.k_anon, config.l_div);
    write_anon_jsonl(anon, std::cout);
    return 0;
}

int cmd_sweep(const MineArgs& base, const std::vector<int>& ks) {
    WlasDatabase db = load_database(base.input, base.format, base.grid);
    const std::vector<std::string> variants = {"baseline", "baseline+i", "baseline+s", "full"};

    ojson rows = ojson::array();
    bool consistent = true;
    for (int k : ks) {
        std::vector<std::future<MineResult>> futs;
        for (const auto& v : variants)
            futs.push_back(std::async(std::launch::async, [&db, v, k]() {
                return mine_topk(db, MiningConfig::for_variant(v, k));
            }));
        std::vector<MineResult> runs;
        for (auto& f : futs) runs.push_back(f.get());
        for (std::size_t i = 0; i < variants.size(); ++i) {
            bool agree = runs[i].results.size() == runs[0].results.size();
            for (std::size_t p = 0; agree && p < runs[i].results.size(); ++p)
                agree = runs[i].results[p].pattern == runs[0].results[p].pattern &&
                        runs[i].results[p].score == runs[0].results[p].score;
            consistent = consistent && agree;
            ojson row;
            row["k"] = k;
            row["variant"] = variants[i];
            row["patterns"] = runs[i].results.size();
            row["recursive_calls"] = runs[i].metrics.recursive_calls;
            row["candidates_generated"] = runs[i].metrics.candidates_generated;
            row["agrees_with_baseline"] = agree;
            rows.push_back(std::move(row));
        }
    }
    ojson report;
    report["sweep"] = rows;
    report["consistent"] = consistent;
    std::cout << report.dump(2) << "\n";
    if (!consistent) {
        std::cerr << "sweep found disagreeing variants\n";
        return 4;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Top-k relevance pattern mining over anonymized activity trajectories"};
    app.require_subcommand(1);

    // encode
    auto* enc = app.add_subcommand("encode", "Encode trajectories to wlas-jsonl on stdout");
    std::string enc_input = "-";
    std::string enc_format = "anon-jsonl";
    GridArgs enc_grid;
    enc->add_option("--input", enc_input, "Input path or - for stdin");
    enc->add_option("--format", enc_format, "Input format")
        ->check(CLI::IsMember({"anon-jsonl", "wlas-jsonl"}));
    add_grid_options(enc, enc_grid);

    // mine
    auto* mine = app.add_subcommand("mine", "Mine top-k patterns, report JSON on stdout");
    MineArgs margs;
    mine->add_option("--input", margs.input, "Input path or - for stdin");
    mine->add_option("--format", margs.format, "Input format")
        ->check(CLI::IsMember({"anon-jsonl", "wlas-jsonl"}));
    mine->add_option("--k", margs.k, "Number of patterns to return")
        ->required()
        ->check(CLI::PositiveNumber);
    mine->add_option("--variant", margs.variant, "Strategy preset")
        ->check(CLI::IsMember({"baseline", "baseline+i", "baseline+s", "full"}));
    add_grid_options(mine, margs.grid);
    mine->add_option("--metrics-out", margs.metrics_out, "Write metrics JSON to this file");
    mine->add_flag("--oracle-check", margs.oracle_check,
                   "Verify the result against brute force (small inputs only)");
    mine->add_flag("--no-prune", margs.no_prune, "Disable width and depth pruning");
    mine->add_option("--seed", margs.seed, "Recorded in the report for reproducibility");
    bool ti_v = false, tu_v = false, width_v = false, depth_v = false;
    auto* ti_f = mine->add_flag("--ti,!--no-ti", ti_v, "Toggle threshold initialization");
    auto* tu_f = mine->add_flag("--tu,!--no-tu", tu_v, "Toggle PTR-ordered exploration");
    auto* width_f = mine->add_flag("--width-prune,!--no-width-prune", width_v, "Toggle width pruning");
    auto* depth_f = mine->add_flag("--depth-prune,!--no-depth-prune", depth_v, "Toggle depth pruning");

    // anonymize
    auto* anon = app.add_subcommand("anonymize", "Anonymize raw-jsonl to anon-jsonl on stdout");
    std::string anon_input = "-";
    AnonymizeConfig aconfig;
    anon->add_option("--input", anon_input, "Input path or - for stdin");
    anon->add_option("--k-anon", aconfig.k_anon, "Distinct locations per MBR")
        ->check(CLI::PositiveNumber);
    anon->add_option("--l-div", aconfig.l_div, "Distinct activities per term")
        ->check(CLI::PositiveNumber);
    anon->add_option("--seed", aconfig.seed, "RNG seed for tie breaking");
    anon->add_option("--inflate", aconfig.inflate, "Minimum MBR extent per axis");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Run every variant over the given k values");
    MineArgs sargs;
    std::vector<int> sweep_ks;
    sweep->add_option("--input", sargs.input, "Input path or - for stdin");
    sweep->add_option("--format", sargs.format, "Input format")
        ->check(CLI::IsMember({"anon-jsonl", "wlas-jsonl"}));
    sweep->add_option("--k", sweep_ks, "k values to sweep")
        ->required()
        ->check(CLI::PositiveNumber);
    add_grid_options(sweep, sargs.grid);

    CLI11_PARSE(app, argc, argv);

    try {
        if (enc->parsed()) return cmd_encode(enc_input, enc_format, enc_grid);
        if (mine->parsed()) {
            if (ti_f->count()) margs.ti = ti_v;
            if (tu_f->count()) margs.tu = tu_v;
            if (width_f->count()) margs.width = width_v;
            if (depth_f->count()) margs.depth = depth_v;
            return cmd_mine(margs);
        }
        if (anon->parsed()) return cmd_anonymize(anon_input, aconfig);
        if (sweep->parsed()) return cmd_sweep(sargs, sweep_ks);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
