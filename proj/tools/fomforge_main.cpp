#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fomforge/io.hpp"
#include "fomforge/merge.hpp"
#include "fomforge/model.hpp"
#include "fomforge/rule_ids.hpp"
#include "fomforge/scenario.hpp"

namespace {

using namespace fomforge;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitMergeRejected = 2;
constexpr int kExitScenarioFailed = 3;
constexpr int kExitUsage = 64;

bool color_enabled() {
    if (std::getenv("FOMFORGE_NO_COLOR") != nullptr) return false;
    return isatty(fileno(stdout)) != 0;
}

std::string severity_tag(Severity severity) {
    const bool color = color_enabled();
    if (severity == Severity::Error) {
        return color ? "\x1b[31merror\x1b[0m" : "error";
    }
    return color ? "\x1b[33mwarning\x1b[0m" : "warning";
}

void print_diagnostics(const std::string& file, const std::vector<ParseDiagnostic>& diagnostics) {
    for (const auto& d : diagnostics) {
        std::cout << file << ":" << d.line << ":" << d.column << ": " << severity_tag(d.severity)
                  << " " << d.rule_id << ": " << d.message << "\n";
    }
}

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct LoadedFile {
    std::string path;
    std::string text;
    ObjectModule module;
};

// Reads and parses one module file, printing diagnostics; nullopt on failure.
std::optional<LoadedFile> load_module_file(const std::string& path) {
    auto text = read_file(path);
    if (!text) {
        std::cout << path << ":0:0: " << severity_tag(Severity::Error) << " "
                  << rules::kFileUnreadable << ": cannot read file\n";
        return std::nullopt;
    }
    ParseResult result = parse_module(*text);
    print_diagnostics(path, result.diagnostics);
    if (!result.ok()) return std::nullopt;
    return LoadedFile{path, std::move(*text), std::move(*result.module)};
}

int cmd_validate(const std::vector<std::string>& files, bool classify) {
    bool all_ok = true;
    for (const auto& path : files) {
        auto loaded = load_module_file(path);
        if (!loaded) {
            all_ok = false;
            continue;
        }
        if (classify) {
            const auto result = classify_module(loaded->module);
            std::cout << path << ": " << to_string(result.kind) << "\n";
            for (const auto& warning : result.warnings) {
                std::cout << path << ":0:0: " << severity_tag(Severity::Warning) << " " << warning
                          << "\n";
            }
        }
    }
    return all_ok ? kExitOk : kExitValidation;
}

void print_rejection(const Rejection& rejection) {
    std::cout << "rejected: ";
    if (!rejection.module.empty()) std::cout << "module '" << rejection.module << "': ";
    if (!rejection.element.empty()) std::cout << rejection.element << ": ";
    std::cout << rejection.rule_id << ": " << rejection.reason << "\n";
}

int cmd_merge(const std::string& mim_path, const std::vector<std::string>& files,
              const std::string& output_path) {
    ObjectModule mim = default_mim();
    if (!mim_path.empty()) {
        auto loaded = load_module_file(mim_path);
        if (!loaded) return kExitValidation;
        mim = std::move(loaded->module);
    }
    std::vector<ObjectModule> modules;
    for (const auto& path : files) {
        auto loaded = load_module_file(path);
        if (!loaded) return kExitValidation;
        modules.push_back(std::move(loaded->module));
    }

    auto base = initial_current_fom(mim);
    if (!base.ok()) {
        print_rejection(base.error());
        return kExitMergeRejected;
    }
    MergeOutcome outcome = merge_modules(base.value(), modules);
    if (!outcome.accepted()) {
        print_rejection(*outcome.report.rejection);
        return kExitMergeRejected;
    }
    for (const auto& warning : outcome.report.warnings) {
        std::cerr << severity_tag(Severity::Warning) << ": " << warning << "\n";
    }

    const std::string document = serialize_module(outcome.fom.merged_model);
    if (output_path.empty()) {
        std::cout << document;
    } else {
        std::ofstream out(output_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write '" << output_path << "'\n";
            return kExitValidation;
        }
        out << document;
    }
    return kExitOk;
}

void emit_diff_porcelain(const FomDiff& diff) {
    for (const auto& field : diff.identification_changes) {
        std::cout << "identification changed " << field << "\n";
    }
    for (const auto& fqn : diff.added_classes) std::cout << "class added " << fqn << "\n";
    for (const auto& fqn : diff.removed_classes) std::cout << "class removed " << fqn << "\n";
    for (const auto& fqn : diff.changed_classes) std::cout << "class changed " << fqn << "\n";
    for (const auto& fqn : diff.added_attributes) std::cout << "attribute added " << fqn << "\n";
    for (const auto& fqn : diff.removed_attributes) {
        std::cout << "attribute removed " << fqn << "\n";
    }
    for (const auto& fqn : diff.changed_attributes) {
        std::cout << "attribute changed " << fqn << "\n";
    }
    for (const auto& table : diff.tables) {
        for (const auto& entry : table.added) {
            std::cout << "table " << table.table << " added " << entry << "\n";
        }
        for (const auto& entry : table.removed) {
            std::cout << "table " << table.table << " removed " << entry << "\n";
        }
        for (const auto& entry : table.changed) {
            std::cout << "table " << table.table << " changed " << entry << "\n";
        }
        if (table.order_changed) std::cout << "table " << table.table << " order-changed\n";
    }
}

void emit_diff_human(const FomDiff& diff) {
    if (diff.empty()) {
        std::cout << "models are identical\n";
        return;
    }
    auto section = [](const char* title, const std::vector<std::string>& items) {
        if (items.empty()) return;
        std::cout << title << ":\n";
        for (const auto& item : items) std::cout << "  " << item << "\n";
    };
    section("identification changes", diff.identification_changes);
    section("classes only in the second model", diff.added_classes);
    section("classes only in the first model", diff.removed_classes);
    section("classes that differ", diff.changed_classes);
    section("attributes/parameters only in the second model", diff.added_attributes);
    section("attributes/parameters only in the first model", diff.removed_attributes);
    section("attributes/parameters that differ", diff.changed_attributes);
    for (const auto& table : diff.tables) {
        std::cout << "table " << table.table << ":\n";
        for (const auto& entry : table.added) std::cout << "  added " << entry << "\n";
        for (const auto& entry : table.removed) std::cout << "  removed " << entry << "\n";
        for (const auto& entry : table.changed) std::cout << "  changed " << entry << "\n";
        if (table.order_changed) std::cout << "  entry order differs\n";
    }
}

int cmd_diff(const std::string& path_a, const std::string& path_b, bool porcelain) {
    auto a = load_module_file(path_a);
    auto b = load_module_file(path_b);
    if (!a || !b) return kExitValidation;
    const FomDiff diff = diff_foms(a->module, b->module);
    if (porcelain) {
        emit_diff_porcelain(diff);
    } else {
        emit_diff_human(diff);
    }
    return kExitOk;
}

int cmd_simulate(const std::string& script_path, bool trace) {
    auto script = read_file(script_path);
    if (!script) {
        std::cout << script_path << ":0:0: " << severity_tag(Severity::Error) << " "
                  << rules::kFileUnreadable << ": cannot read file\n";
        return kExitValidation;
    }
    ScenarioOptions options;
    options.trace = trace;
    options.base_dir = std::filesystem::path(script_path).parent_path();
    if (options.base_dir.empty()) options.base_dir = ".";
    const ScenarioResult result = run_scenario(*script, options, std::cout);
    if (result.exit_code == 3) return kExitScenarioFailed;
    if (result.exit_code != 0) return kExitValidation;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"modular federation object model toolkit"};
    app.require_subcommand(1);

    auto* validate = app.add_subcommand("validate", "parse and check module files");
    std::vector<std::string> validate_files;
    bool classify = false;
    validate->add_option("files", validate_files, "module files")->required();
    validate->add_flag("--classify", classify, "print Standalone/Dependent per file");

    auto* merge = app.add_subcommand("merge", "compose modules into one document");
    std::string mim_path;
    std::string output_path;
    std::vector<std::string> merge_files;
    merge->add_option("--mim", mim_path, "base module supplying the roots");
    merge->add_option("-o,--output", output_path, "output file (stdout when omitted)");
    merge->add_option("files", merge_files, "module files, applied in order")->required();

    auto* diff = app.add_subcommand("diff", "structural difference of two documents");
    std::string diff_a;
    std::string diff_b;
    bool porcelain = false;
    diff->add_option("a", diff_a, "first document")->required();
    diff->add_option("b", diff_b, "second document")->required();
    diff->add_flag("--porcelain", porcelain, "stable line-oriented output");

    auto* simulate = app.add_subcommand("simulate", "run a federation scenario script");
    std::string script_path;
    bool trace = false;
    simulate->add_option("script", script_path, "scenario script")->required();
    simulate->add_flag("--trace", trace, "print the protocol event log");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (validate->parsed()) return cmd_validate(validate_files, classify);
    if (merge->parsed()) return cmd_merge(mim_path, merge_files, output_path);
    if (diff->parsed()) return cmd_diff(diff_a, diff_b, porcelain);
    if (simulate->parsed()) return cmd_simulate(script_path, trace);
    return kExitUsage;
}
