// softspace: enumerate and run small machine spaces, build CTM tables,
// estimate complexity with BDM, run AID perturbation analysis, and
// render runtime fields along the Peano curve.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "softspace/aid.hpp"
#include "softspace/bdm.hpp"
#include "softspace/ctm.hpp"
#include "softspace/enumeration.hpp"
#include "softspace/errors.hpp"
#include "softspace/grid.hpp"
#include "softspace/render.hpp"
#include "softspace/runner.hpp"

using nlohmann::json;
using namespace softspace;

namespace {

// Exit codes: 0 ok, 2 usage, 3 not-in-support, 4 dimension/consistency,
// 5 I/O. Library errors map onto these at this boundary only.
constexpr int kExitUsage = 2;
constexpr int kExitNotInSupport = 3;
constexpr int kExitConsistency = 4;
constexpr int kExitIo = 5;

uint64_t fnv1a64(const std::string& text) {
    uint64_t hash = 1469598103934665603ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    return hash;
}

std::string hash_hex(const std::string& text) {
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(text);
    return out.str();
}

// Content hash of an input file, so provenance is independent of where
// the file happens to live.
std::string file_hash_hex(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return hash_hex(buffer.str());
}

// Shared space/run flags.
struct SpaceArgs {
    uint32_t states = 2;
    uint32_t symbols = 2;
    uint32_t dim = 1;
    uint64_t budget = 0;  // 0 = space default
    std::string range;    // "a:b", empty = full
    uint32_t threads = 1;
    bool symmetry = false;

    MachineSpace space() const {
        return MachineSpace(states, symbols, dim == 1 ? Dimension::OneD : Dimension::TwoD);
    }

    uint64_t effective_budget() const { return budget ? budget : default_budget(space()); }

    IndexRange parse_range() const {
        const MachineSpace s = space();
        if (range.empty()) {
            return full_range(s);
        }
        const size_t colon = range.find(':');
        if (colon == std::string::npos) {
            throw ValidationError("range must look like start:end, got '" + range + "'");
        }
        return make_range(s, parse_u128(range.substr(0, colon)),
                          parse_u128(range.substr(colon + 1)));
    }

    // Canonical description of the semantic config (threads and output
    // paths excluded so artifacts are schedule-independent).
    std::string describe(const std::string& cmd) const {
        const IndexRange r = parse_range();
        std::ostringstream out;
        out << "cmd=" << cmd << " states=" << states << " symbols=" << symbols
            << " dim=" << dim << " budget=" << effective_budget() << " range="
            << to_string(r.start) << ":" << to_string(r.end) << " symmetry=" << symmetry;
        return out.str();
    }

    void add_options(CLI::App* cmd, bool with_run_flags = true) {
        cmd->add_option("-n,--states", states, "Number of states")->check(CLI::PositiveNumber);
        cmd->add_option("-m,--symbols", symbols, "Number of symbols")
            ->check(CLI::Range(2u, 255u));
        cmd->add_option("-d,--dim", dim, "Tape dimension (1 or 2)")->check(CLI::Range(1u, 2u));
        if (with_run_flags) {
            cmd->add_option("-b,--budget", budget,
                            "Step budget (default: per-space default)")
                ->check(CLI::Range(uint64_t{1}, kMaxBudget));
            cmd->add_option("-r,--range", range, "Index range start:end (default: full space)");
            cmd->add_option("-t,--threads", threads, "Worker threads (0 = hardware)");
            cmd->add_flag("--symmetry", symmetry,
                          "Run only symmetry-class representatives (binary spaces, full range)");
        }
    }
};

json space_json(const MachineSpace& space) {
    return json{{"states", space.states()},
                {"symbols", space.symbols()},
                {"dimension", space.dimension() == Dimension::OneD ? 1 : 2}};
}

json summary_json(const SpaceRunSummary& summary, const std::string& config_hash) {
    json hist = json::object();
    for (const auto& [steps, count] : summary.runtime_histogram) {
        hist[std::to_string(steps)] = count;
    }
    json beavers = json::array();
    for (u128 index : summary.busy_beaver_indices) {
        beavers.push_back(to_string(index));
    }
    return json{{"space", space_json(summary.space)},
                {"budget", summary.budget},
                {"total", summary.total},
                {"halting_count", summary.halting_count},
                {"censored_count", summary.total - summary.halting_count},
                {"max_steps", summary.max_steps},
                {"busy_beaver_indices", beavers},
                {"runtime_histogram", hist},
                {"config_hash", config_hash}};
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    return out;
}

void finish_out(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

// Resolves a table path, consulting SOFTSPACE_TABLE_DIR for bare names.
std::filesystem::path resolve_table_path(const std::string& given) {
    std::filesystem::path path(given);
    if (std::filesystem::exists(path)) {
        return path;
    }
    if (const char* dir = std::getenv("SOFTSPACE_TABLE_DIR");
        dir != nullptr && !path.is_absolute()) {
        const std::filesystem::path fallback = std::filesystem::path(dir) / path;
        if (std::filesystem::exists(fallback)) {
            return fallback;
        }
    }
    return path;  // let the open fail with a clear message
}

Boundary parse_boundary(const std::string& name) {
    if (name == "exact") {
        return Boundary::Exact;
    }
    if (name == "ignore") {
        return Boundary::Ignore;
    }
    if (name == "pad") {
        return Boundary::Pad;
    }
    throw ValidationError("boundary must be exact, ignore or pad, got '" + name + "'");
}

// ---- subcommand bodies ----

struct EnumerateArgs {
    SpaceArgs space;
    bool classes = false;
    bool list = false;
};

int cmd_enumerate(const EnumerateArgs& args) {
    const MachineSpace space = args.space.space();
    if (args.classes) {
        std::cout << "representative,multiplicity,transforms\n";
        reduce_by_symmetry(space, [](const SymmetryClass& cls) {
            std::string transforms;
            if (cls.transforms & kTransformComplement) {
                transforms += "complement";
            }
            if (cls.transforms & kTransformMirror) {
                transforms += transforms.empty() ? "mirror" : "+mirror";
            }
            std::cout << to_string(cls.representative) << ","
                      << static_cast<unsigned>(cls.multiplicity) << "," << transforms << "\n";
        });
        return 0;
    }
    if (args.list) {
        for (u128 i : iter_space(space, args.space.parse_range())) {
            std::cout << to_string(i) << "\n";
        }
        return 0;
    }
    json out{{"space", space_json(space)},
             {"instructions_per_entry", space.instructions_per_entry()},
             {"entries", space.entry_count()},
             {"space_size", to_string(space_size(space))}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

struct RunSpaceArgs {
    SpaceArgs space;
    std::string records_path;
    std::string summary_path;
};

int cmd_run_space(const RunSpaceArgs& args) {
    const MachineSpace space = args.space.space();
    const IndexRange range = args.space.parse_range();
    const uint64_t budget = args.space.effective_budget();
    const std::string config_hash = hash_hex(args.space.describe("run-space"));
    const RunOptions options{args.space.threads, args.space.symmetry, 0};

    SpaceRunSummary summary{space, budget, 0, 0, 0, {}, {}};
    if (!args.records_path.empty()) {
        std::ofstream records = open_out(args.records_path);
        records << "# config=" << config_hash << "\n";
        records << "index,halted,steps,output\n";
        summary = run_space(space, range, budget, options, [&](const RunRecord& rec) {
            records << to_string(rec.index) << "," << (rec.halted ? 1 : 0) << "," << rec.steps
                    << "," << (rec.halted ? rec.output.csv_field() : "") << "\n";
        });
        finish_out(records, args.records_path);
    } else {
        summary = run_space(space, range, budget, options);
    }

    const json out = summary_json(summary, config_hash);
    if (!args.summary_path.empty()) {
        std::ofstream file = open_out(args.summary_path);
        file << out.dump(2) << "\n";
        finish_out(file, args.summary_path);
    } else {
        std::cout << out.dump(2) << "\n";
    }
    return 0;
}

struct CtmBuildArgs {
    SpaceArgs space;
    std::string out_path;
};

int cmd_ctm_build(const CtmBuildArgs& args) {
    const MachineSpace space = args.space.space();
    const TableRunResult result =
        run_space_table(space, args.space.parse_range(), args.space.effective_budget(),
                        RunOptions{args.space.threads, args.space.symmetry, 0});
    save_table(result.table, std::filesystem::path(args.out_path));
    std::cerr << "wrote " << args.out_path << " (" << result.table.counts.size() << " outputs, "
              << result.table.halting_total << " halting of " << result.table.total_machines
              << ")\n";
    return 0;
}

struct CtmQueryArgs {
    std::string table_path;
    std::string key;
};

int cmd_ctm_query(const CtmQueryArgs& args) {
    const CtmTable table = load_table(resolve_table_path(args.table_path));
    const uint64_t count = [&] {
        auto it = table.counts.find(args.key);
        if (it == table.counts.end()) {
            throw NotInSupportError("'" + args.key +
                                    "' is not in the table support at this space/budget");
        }
        return it->second;
    }();
    std::cout << "string,count,ap,ctm\n";
    std::cout << args.key << "," << count << "," << std::setprecision(12)
              << ap_estimate(args.key, table) << "," << ctm_value(args.key, table) << "\n";
    return 0;
}

struct CtmMergeArgs {
    std::vector<std::string> inputs;
    std::string out_path;
};

int cmd_ctm_merge(const CtmMergeArgs& args) {
    CtmTable merged = load_table(resolve_table_path(args.inputs.front()));
    for (size_t i = 1; i < args.inputs.size(); ++i) {
        merged = merge_tables(merged, load_table(resolve_table_path(args.inputs[i])));
    }
    save_table(merged, std::filesystem::path(args.out_path));
    std::cerr << "wrote " << args.out_path << " (" << merged.counts.size() << " outputs)\n";
    return 0;
}

struct BdmArgs {
    std::string table_path;
    std::string input_path;
    std::string input_string;
    std::string input_id = "input";
    uint32_t d = 0;  // 0 = dimension default
    uint32_t derive = 0;
    std::string boundary = "exact";
    uint32_t pad_symbol = 0;
    std::string format = "csv";
};

int cmd_bdm(const BdmArgs& args) {
    const std::filesystem::path table_path = resolve_table_path(args.table_path);
    BaseTable table = BaseTable::from_file(table_path);
    if (args.derive) {
        table = derive_binary_base(table, args.d ? args.d : kDefaultBlock2D, args.derive);
    }
    const Boundary boundary = parse_boundary(args.boundary);
    double entropy = 0.0;
    double bdm = 0.0;
    uint32_t d = args.d;
    if (!args.input_string.empty()) {
        d = d ? d : kDefaultBlock1D;
        entropy = shannon_block_entropy(args.input_string, 1);
        bdm = bdm_string(args.input_string, table, d, boundary,
                         static_cast<uint8_t>(args.pad_symbol));
    } else {
        const Grid grid = read_grid_text(std::filesystem::path(args.input_path));
        d = d ? d : kDefaultBlock2D;
        entropy = shannon_block_entropy(grid, 1);
        bdm = bdm_value(grid, table, d, boundary, static_cast<uint8_t>(args.pad_symbol));
    }
    std::ostringstream config;
    config << "cmd=bdm table=" << file_hash_hex(table_path) << " input="
           << (args.input_string.empty()
                   ? file_hash_hex(std::filesystem::path(args.input_path))
                   : hash_hex(args.input_string))
           << " d=" << d << " boundary=" << args.boundary << " pad=" << args.pad_symbol
           << " derive=" << args.derive;
    const std::string config_hash = hash_hex(config.str());
    if (args.format == "json") {
        json out{{"input_id", args.input_id}, {"entropy", entropy},   {"bdm", bdm},
                 {"d", d},                    {"boundary", args.boundary},
                 {"config_hash", config_hash}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "# config=" << config_hash << "\n";
        std::cout << "input_id,entropy,bdm,d,boundary\n";
        std::cout << args.input_id << "," << std::setprecision(12) << entropy << "," << bdm
                  << "," << d << "," << args.boundary << "\n";
    }
    return 0;
}

struct AidArgs {
    std::string table_path;
    std::string object_path;
    std::string kind = "grid";
    std::string family = "flips";
    std::string size_convention;
    double threshold = -1.0;
    uint32_t d = 0;
    uint32_t derive = 0;
    std::string boundary = "exact";
    uint32_t pad_symbol = 0;
    std::string out_path;
    std::string json_path;
};

int cmd_aid(const AidArgs& args) {
    const std::filesystem::path table_path = resolve_table_path(args.table_path);
    BaseTable table = BaseTable::from_file(table_path);
    if (args.derive) {
        table = derive_binary_base(table, args.d ? args.d : kDefaultBlock2D, args.derive);
    }
    PerturbationTarget target;
    target.object = read_grid_text(std::filesystem::path(args.object_path));
    if (args.kind == "graph") {
        target.kind = TargetKind::Graph;
        target.undirected = true;
    } else if (args.kind == "digraph") {
        target.kind = TargetKind::Graph;
        target.undirected = false;
    } else if (args.kind == "grid") {
        target.kind = TargetKind::Grid;
    } else {
        throw ValidationError("kind must be grid, graph or digraph");
    }

    SizeConvention convention = target.kind == TargetKind::Graph ? SizeConvention::Vertices
                                                                 : SizeConvention::Cells;
    if (!args.size_convention.empty()) {
        if (args.size_convention == "cells") {
            convention = SizeConvention::Cells;
        } else if (args.size_convention == "vertices") {
            convention = SizeConvention::Vertices;
        } else if (args.size_convention == "rows") {
            convention = SizeConvention::Rows;
        } else {
            throw ValidationError("size convention must be cells, vertices or rows");
        }
    }

    const BdmContext ctx{&table, args.d ? args.d : kDefaultBlock2D, parse_boundary(args.boundary),
                         static_cast<uint8_t>(args.pad_symbol)};
    std::optional<double> threshold;
    if (args.threshold >= 0.0) {
        threshold = args.threshold;
    }
    PerturbationReport report;
    if (args.family == "flips") {
        report = signature_flips(target, ctx, convention, threshold);
    } else if (args.family == "edges") {
        report = signature_edges(target, ctx, convention, threshold);
    } else {
        throw ValidationError("family must be flips or edges");
    }

    std::ostringstream config;
    config << "cmd=aid table=" << file_hash_hex(table_path) << " object="
           << file_hash_hex(std::filesystem::path(args.object_path)) << " kind=" << args.kind
           << " family=" << args.family << " d=" << ctx.d << " derive=" << args.derive
           << " boundary=" << args.boundary << " threshold="
           << (threshold ? std::to_string(*threshold) : std::string("log2|G|"));
    const std::string config_hash = hash_hex(config.str());

    if (!args.out_path.empty()) {
        std::ofstream out = open_out(args.out_path);
        out << "# config=" << config_hash << "\n";
        write_report_csv(report, out);
        finish_out(out, args.out_path);
    } else {
        std::cout << "# config=" << config_hash << "\n";
        write_report_csv(report, std::cout);
    }
    if (!args.json_path.empty()) {
        json entries = json::array();
        for (const PerturbationEntry& e : report.entries) {
            entries.push_back(json{
                {"element", {e.a, e.b}},
                {"delta", e.delta},
                {"class",
                 e.classification == Classification::Neutral ? "neutral" : "information"},
                {"sign", e.sign == DeltaSign::Zero
                             ? "zero"
                             : (e.sign == DeltaSign::Positive ? "positive" : "negative")},
            });
        }
        json out{{"threshold", report.threshold},
                 {"signature", report.signature},
                 {"entries", entries},
                 {"config_hash", config_hash}};
        std::ofstream file = open_out(args.json_path);
        file << out.dump(2) << "\n";
        finish_out(file, args.json_path);
    }
    return 0;
}

struct EcaArgs {
    uint32_t rule = 110;
    uint32_t width = 16;
    uint32_t steps = 16;
    std::string init;
    std::string out_path;
};

int cmd_eca(const EcaArgs& args) {
    Grid grid;
    if (args.init.empty()) {
        grid = eca_evolve(args.rule, args.width, args.steps);
    } else {
        std::vector<uint8_t> init;
        init.reserve(args.init.size());
        for (char c : args.init) {
            if (c != '0' && c != '1') {
                throw ValidationError("--init must be a string of 0/1 digits");
            }
            init.push_back(static_cast<uint8_t>(c - '0'));
        }
        grid = eca_evolve(args.rule, args.steps, init);
    }
    std::ostringstream config;
    config << "cmd=eca rule=" << args.rule << " width=" << grid.cols << " steps=" << args.steps
           << " init=" << (args.init.empty() ? "center" : args.init);
    if (!args.out_path.empty()) {
        std::ofstream out = open_out(args.out_path);
        out << "# config=" << hash_hex(config.str()) << "\n";
        write_grid_text(grid, out);
        finish_out(out, args.out_path);
    } else {
        write_grid_text(grid, std::cout);
    }
    return 0;
}

struct RenderArgs {
    SpaceArgs space;
    uint32_t level = 0;  // 0 = minimal for range
    std::string out_path;
    std::string csv_path;
};

int cmd_render(const RenderArgs& args) {
    const MachineSpace space = args.space.space();
    const IndexRange range = args.space.parse_range();
    const uint64_t budget = args.space.effective_budget();
    if (range.length() > (1ULL << 40)) {
        throw RangeError("range too large to render");
    }
    const uint64_t count = static_cast<uint64_t>(range.length());
    const uint32_t level = args.level ? args.level : peano_level_for(count);

    std::vector<RunRecord> records;
    records.reserve(count);
    run_space(space, range, budget, RunOptions{args.space.threads, false, 0},
              [&](const RunRecord& rec) { records.push_back(rec); });
    const Image image = render_field(records, level);
    write_ppm(image, std::filesystem::path(args.out_path));
    if (!args.csv_path.empty()) {
        std::ofstream csv = open_out(args.csv_path);
        csv << "# config=" << hash_hex(args.space.describe("render") + " level=" +
                                       std::to_string(level))
            << "\n";
        write_field_csv(records, level, csv);
        finish_out(csv, args.csv_path);
    }
    std::cerr << "wrote " << args.out_path << " (" << image.width << "x" << image.height
              << ", " << records.size() << " machines)\n";
    return 0;
}

json error_json(const std::string& message, int code) {
    return json{{"error", message}, {"code", code}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"softspace: exploring spaces of small programs"};
    app.require_subcommand(1);
    // Defaults come from an INI file with one [subcommand] section per
    // command; command-line flags override file values, unknown keys are
    // rejected. The flag goes before the subcommand name.
    app.set_config("--config", "", "Read defaults from a config file; flags override it");
    app.allow_config_extras(false);

    EnumerateArgs enumerate_args;
    auto* enumerate = app.add_subcommand("enumerate", "Describe or list a machine space");
    enumerate_args.space.add_options(enumerate, /*with_run_flags=*/false);
    enumerate->add_option("-r,--range", enumerate_args.space.range,
                          "Index range start:end for --list");
    enumerate->add_flag("--classes", enumerate_args.classes,
                        "Stream symmetry classes as CSV");
    enumerate->add_flag("--list", enumerate_args.list, "List rule indices in the range");

    RunSpaceArgs run_args;
    auto* run = app.add_subcommand("run-space", "Run every machine in a range");
    run_args.space.add_options(run);
    run->add_option("--records", run_args.records_path, "Write per-machine records CSV here");
    run->add_option("--summary", run_args.summary_path,
                    "Write the JSON summary here (default: stdout)");

    auto* ctm = app.add_subcommand("ctm", "Build, query or merge CTM tables");
    ctm->require_subcommand(1);
    CtmBuildArgs build_args;
    auto* build = ctm->add_subcommand("build", "Run a space and save its frequency table");
    build_args.space.add_options(build);
    build->add_option("-o,--out", build_args.out_path, "Output table file")->required();

    CtmQueryArgs query_args;
    auto* query = ctm->add_subcommand("query", "Look up one output string");
    query->add_option("--table", query_args.table_path, "Table file")->required();
    query->add_option("key", query_args.key, "Output string (2D: RxC:cells)")->required();

    CtmMergeArgs merge_args;
    auto* merge = ctm->add_subcommand("merge", "Merge tables from sharded runs");
    merge->add_option("inputs", merge_args.inputs, "Input table files")
        ->required()
        ->expected(-2);
    merge->add_option("-o,--out", merge_args.out_path, "Output table file")->required();

    BdmArgs bdm_args;
    auto* bdm = app.add_subcommand("bdm", "Block-decomposition complexity of a string or grid");
    bdm->add_option("--table", bdm_args.table_path, "CTM base table file")->required();
    bdm->add_option("-i,--input", bdm_args.input_path, "Grid text file");
    bdm->add_option("-s,--string", bdm_args.input_string, "1D input string");
    bdm->add_option("--id", bdm_args.input_id, "Input id echoed in the report");
    bdm->add_option("--block,--d", bdm_args.d, "Block size (default 4 for grids, 12 for strings)");
    bdm->add_option("--derive", bdm_args.derive,
                    "Derive the block-size base from the table's smaller blocks of this size");
    bdm->add_option("--boundary", bdm_args.boundary, "exact | ignore | pad");
    bdm->add_option("--pad-symbol", bdm_args.pad_symbol, "Pad symbol")->check(CLI::Range(0, 9));
    bdm->add_option("--format", bdm_args.format, "csv | json");

    AidArgs aid_args;
    auto* aid = app.add_subcommand("aid", "Perturbation analysis of a grid or graph");
    aid->add_option("--table", aid_args.table_path, "CTM base table file")->required();
    aid->add_option("-i,--object", aid_args.object_path, "Object file (grid text)")->required();
    aid->add_option("--kind", aid_args.kind, "grid | graph | digraph");
    aid->add_option("--family", aid_args.family, "flips | edges");
    aid->add_option("--size-convention", aid_args.size_convention, "cells | vertices | rows");
    aid->add_option("--threshold", aid_args.threshold,
                    "Neutrality threshold in bits (default log2|G|)");
    aid->add_option("--block,--d", aid_args.d, "Block size (default 4)");
    aid->add_option("--derive", aid_args.derive,
                    "Derive the block-size base from the table's smaller blocks of this size");
    aid->add_option("--boundary", aid_args.boundary, "exact | ignore | pad");
    aid->add_option("--pad-symbol", aid_args.pad_symbol, "Pad symbol")->check(CLI::Range(0, 9));
    aid->add_option("-o,--out", aid_args.out_path, "Report CSV path (default: stdout)");
    aid->add_option("--json", aid_args.json_path, "Also write a JSON report here");

    EcaArgs eca_args;
    auto* eca = app.add_subcommand("eca", "Evolve an elementary cellular automaton");
    eca->add_option("--rule", eca_args.rule, "Rule number 0..255")->check(CLI::Range(0, 255));
    eca->add_option("--width", eca_args.width, "Row width (ignored with --init)");
    eca->add_option("--steps", eca_args.steps, "Evolution steps");
    eca->add_option("--init", eca_args.init, "Initial row as 0/1 digits (default: centered 1)");
    eca->add_option("-o,--out", eca_args.out_path, "Grid text output (default: stdout)");

    RenderArgs render_args;
    auto* render = app.add_subcommand("render", "Render a runtime field along the Peano curve");
    render_args.space.add_options(render);
    render->add_option("--level", render_args.level, "Peano level (default: minimal fitting)");
    render->add_option("-o,--out", render_args.out_path, "Output PPM (P6)")->required();
    render->add_option("--csv", render_args.csv_path, "Optional index,x,y,steps,halted sidecar");

    int exit_code = 0;
    enumerate->callback([&] { exit_code = cmd_enumerate(enumerate_args); });
    run->callback([&] { exit_code = cmd_run_space(run_args); });
    build->callback([&] { exit_code = cmd_ctm_build(build_args); });
    query->callback([&] { exit_code = cmd_ctm_query(query_args); });
    merge->callback([&] { exit_code = cmd_ctm_merge(merge_args); });
    bdm->callback([&] { exit_code = cmd_bdm(bdm_args); });
    aid->callback([&] { exit_code = cmd_aid(aid_args); });
    eca->callback([&] { exit_code = cmd_eca(eca_args); });
    render->callback([&] { exit_code = cmd_render(render_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << error_json(e.what(), kExitUsage).dump() << "\n";
        return kExitUsage;
    } catch (const MissingBlockError& e) {
        std::cerr << error_json(e.what(), kExitNotInSupport).dump() << "\n";
        return kExitNotInSupport;
    } catch (const NotInSupportError& e) {
        std::cerr << error_json(e.what(), kExitNotInSupport).dump() << "\n";
        return kExitNotInSupport;
    } catch (const DimensionError& e) {
        std::cerr << error_json(e.what(), kExitConsistency).dump() << "\n";
        return kExitConsistency;
    } catch (const ConsistencyError& e) {
        std::cerr << error_json(e.what(), kExitConsistency).dump() << "\n";
        return kExitConsistency;
    } catch (const IoError& e) {
        std::cerr << error_json(e.what(), kExitIo).dump() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        // Range, validation and unsupported-space errors are usage-level.
        std::cerr << error_json(e.what(), kExitUsage).dump() << "\n";
        return kExitUsage;
    }
    return exit_code;
}
