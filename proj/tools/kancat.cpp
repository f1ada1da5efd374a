// kancat: run construction scripts, export categories, and run check suites.
//
// Exit codes: 0 all checks pass, 1 some check failed or was undecided,
// 2 usage, script or IO error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kancat/error.hpp"
#include "kancat/eval.hpp"
#include "kancat/io.hpp"
#include "kancat/suites.hpp"

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct Common {
    std::vector<std::string> bounds;
    bool json = false;
    std::uint64_t seed = 0;
    bool no_ids = false;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--bounds", c.bounds, "Override bounds, e.g. n_max=3,iso_cap=16 (repeatable)");
    cmd->add_flag("--json", c.json, "Machine-readable report");
    cmd->add_option("--seed", c.seed, "Seed for randomized fixtures");
    cmd->add_flag("--no-ids", c.no_ids, "Omit identity arrows from DOT output");
}

kancat::Bounds resolve_bounds(const Common& c) {
    kancat::Bounds b;
    if (const char* env = std::getenv("KANCAT_BOUNDS")) b.apply(env);
    for (const auto& spec : c.bounds) b.apply(spec);
    return b;
}

int emit(const kancat::RunReport& report, const Common& c) {
    if (c.json) {
        std::cout << report.json().dump(2) << "\n";
    } else {
        std::cout << report.text();
    }
    return report.exit_code();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw kancat::Error("cannot open '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Left Kan extensions of pra-functors as finite categories"};
    app.require_subcommand(1);

    Common common;

    std::string script;
    auto* run = app.add_subcommand("run", "Run a .kan script and report its checks");
    run->add_option("script", script, "Script path")->required();
    add_common(run, common);

    std::string expr, out_path, base_dir = ".";
    bool as_dot = false;
    auto* exp = app.add_subcommand("export", "Evaluate an expression and write it as DOT or JSON");
    exp->add_option("expr", expr, "Expression, e.g. 'selection(walking_arrow, y^2)'")->required();
    exp->add_flag("--dot", as_dot, "Graphviz output");
    exp->add_option("-o,--out", out_path, "Output file (default: stdout)");
    exp->add_option("--base-dir", base_dir, "Directory for cat(\"...\") paths");
    add_common(exp, common);

    std::string suite;
    bool list = false;
    auto* st = app.add_subcommand("suite", "Run a built-in check suite");
    st->add_option("name", suite, "Suite name, or 'all'");
    st->add_flag("--list", list, "List suite names");
    add_common(st, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        kancat::Bounds bounds = resolve_bounds(common);
        if (run->parsed()) {
            kancat::Env env;
            env.bounds = bounds;
            env.seed = common.seed;
            env.omit_identities = common.no_ids;
            env.base_dir = std::filesystem::path(script).parent_path().string();
            if (env.base_dir.empty()) env.base_dir = ".";
            auto report = kancat::run_script(read_file(script), env);
            report.subject = script;
            return emit(report, common);
        }
        if (exp->parsed()) {
            // Here --json selects the output format rather than the report form.
            bool dot = as_dot;
            bool json = common.json;
            if (dot == json) {
                std::cerr << "error: choose exactly one of --dot and --json\n";
                return kExitUsage;
            }
            kancat::Env env;
            env.bounds = bounds;
            env.seed = common.seed;
            env.base_dir = base_dir;
            auto value = kancat::eval_ast(*kancat::parse_expr(expr), env);
            std::string text = kancat::export_value(value, dot ? "dot" : "json", env, common.no_ids);
            if (out_path.empty()) {
                std::cout << text;
            } else {
                kancat::save_text_file(out_path, text);
            }
            return 0;
        }
        if (list || suite.empty()) {
            for (const auto& n : kancat::suite_names()) std::cout << n << "\n";
            return suite.empty() && !list ? kExitUsage : 0;
        }
        std::vector<std::string> names = suite == "all" ? kancat::suite_names() : std::vector<std::string>{suite};
        int code = 0;
        kancat::Json all = kancat::Json::array();
        for (const auto& n : names) {
            auto report = kancat::run_suite(n, bounds);
            if (common.json) {
                all.push_back(report.json());
            } else {
                std::cout << report.text();
            }
            if (report.exit_code() != 0) code = kExitCheckFailed;
        }
        if (common.json) std::cout << (names.size() == 1 ? all[0] : all).dump(2) << "\n";
        return code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
