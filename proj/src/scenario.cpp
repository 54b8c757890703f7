#include "fomforge/scenario.hpp"

#include <fstream>
#include <sstream>

#include "fomforge/rule_ids.hpp"

namespace fomforge {

namespace {

std::vector<std::string> tokenize(std::string_view line) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i >= line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        tokens.emplace_back(line.substr(start, i - start));
    }
    return tokens;
}

struct CommandStatus {
    bool ran = false;
    bool ok = false;
    std::string rule_id;
    std::string message;
};

class ScenarioRunner {
public:
    ScenarioRunner(const ScenarioOptions& options, std::ostream& out)
        : options_(options), out_(out) {}

    ScenarioResult run(std::string_view script) {
        std::size_t line_number = 0;
        std::size_t start = 0;
        while (start <= script.size() && !syntax_error_) {
            if (start == script.size()) break;
            std::size_t end = script.find('\n', start);
            if (end == std::string_view::npos) end = script.size();
            ++line_number;
            execute_line(script.substr(start, end - start), line_number);
            start = end + 1;
        }
        if (options_.trace) print_trace();
        out_ << "scenario: " << result_.expects_passed << " passed, " << result_.expects_failed
             << " failed\n";
        if (syntax_error_) {
            result_.exit_code = 1;
        } else if (result_.expects_failed > 0) {
            result_.exit_code = 3;
        }
        return result_;
    }

private:
    void syntax(std::size_t line, const std::string& message) {
        out_ << "script error at line " << line << ": " << message << "\n";
        syntax_error_ = true;
    }

    void finish_command(const std::string& raw) {
        ++result_.commands_run;
        if (last_.ok) {
            out_ << "ok\n";
        } else {
            out_ << "error " << last_.rule_id << ": " << last_.message << "\n";
        }
        (void)raw;
    }

    void succeed() {
        last_ = CommandStatus{true, true, "", ""};
    }

    void fail(const SimError& error) {
        last_ = CommandStatus{true, false, error.rule_id, error.message};
    }

    // Reads and parses a module file relative to the script directory.
    std::optional<ModuleInput> load_module_file(const std::string& path_token) {
        const std::filesystem::path path = options_.base_dir / path_token;
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            fail(SimError{rules::kFileUnreadable, "cannot read '" + path.string() + "'"});
            return std::nullopt;
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        auto input = ModuleInput::from_text(buffer.str());
        if (!input.ok()) {
            const ParseDiagnostic* first = nullptr;
            for (const auto& d : input.error()) {
                if (d.severity == Severity::Error) {
                    first = &d;
                    break;
                }
            }
            fail(SimError{first ? first->rule_id : std::string(rules::kXmlMalformed),
                          path_token + ": " + (first ? first->message : "parse failed")});
            return std::nullopt;
        }
        return std::move(input.value());
    }

    void execute_line(std::string_view raw_line, std::size_t line_number) {
        std::string_view line = raw_line;
        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        const std::vector<std::string> tokens = tokenize(line);
        if (tokens.empty()) return;
        const std::string& command = tokens.front();

        if (command == "expect") {
            run_expect(tokens, line_number);
            return;
        }

        out_ << "> " << tokens_joined(tokens) << "\n";
        if (command == "create") run_create(tokens, line_number);
        else if (command == "join") run_join(tokens, line_number);
        else if (command == "mom") run_mom(tokens, line_number);
        else if (command == "reqmod") run_reqmod(tokens, line_number);
        else if (command == "reqmim") run_reqmim(tokens, line_number);
        else if (command == "handle") run_handle(tokens, line_number);
        else if (command == "publish" || command == "subscribe") run_declare(tokens, line_number);
        else if (command == "resign") run_resign(tokens, line_number);
        else if (command == "destroy") run_destroy(tokens, line_number);
        else {
            syntax(line_number, "unknown command '" + command + "'");
            return;
        }
        if (!syntax_error_) finish_command(tokens_joined(tokens));
    }

    static std::string tokens_joined(const std::vector<std::string>& tokens) {
        std::string out;
        for (const auto& token : tokens) {
            if (!out.empty()) out.push_back(' ');
            out += token;
        }
        return out;
    }

    void run_expect(const std::vector<std::string>& tokens, std::size_t line_number) {
        if (tokens.size() < 2 || tokens.size() > 3 ||
            (tokens[1] != "ok" && tokens[1] != "error")) {
            syntax(line_number, "usage: expect ok|error [ruleId]");
            return;
        }
        bool pass = false;
        std::string why;
        if (!last_.ran) {
            why = "no previous command";
        } else if (tokens[1] == "ok") {
            pass = last_.ok;
            if (!pass) why = "previous command failed with " + last_.rule_id;
        } else {
            pass = !last_.ok;
            if (!pass) {
                why = "previous command succeeded";
            } else if (tokens.size() == 3 && last_.rule_id != tokens[2]) {
                pass = false;
                why = "expected rule " + tokens[2] + ", got " + last_.rule_id;
            }
        }
        if (pass) {
            ++result_.expects_passed;
            out_ << "expect: pass\n";
        } else {
            ++result_.expects_failed;
            out_ << "expect: FAIL (" << why << ")\n";
        }
    }

    void run_create(const std::vector<std::string>& tokens, std::size_t line_number) {
        if (tokens.size() < 2) {
            syntax(line_number, "usage: create <fedName> [--mim <file>] <module-file>...");
            return;
        }
        const std::string& fed_name = tokens[1];
        std::optional<ModuleInput> mim;
        std::vector<ModuleInput> modules;
        for (std::size_t i = 2; i < tokens.size(); ++i) {
            if (tokens[i] == "--mim") {
                if (i + 1 >= tokens.size()) {
                    syntax(line_number, "--mim requires a file argument");
                    return;
                }
                auto input = load_module_file(tokens[++i]);
                if (!input) return;  // load_module_file already set the status
                mim = std::move(*input);
                continue;
            }
            auto input = load_module_file(tokens[i]);
            if (!input) return;
            modules.push_back(std::move(*input));
        }
        auto created = registry_.create_federation_execution(fed_name, modules, mim);
        if (!created.ok()) {
            fail(created.error());
            return;
        }
        out_ << "created " << created->federation << " generation=" << created->generation << "\n";
        succeed();
    }

    void run_join(const std::vector<std::string>& tokens, std::size_t line_number) {
        if (tokens.size() < 3) {
            syntax(line_number, "usage: join <federateName> <fedName> [<module-file>...]");
            return;
        }
        std::vector<ModuleInput> modules;
        for (std::size_t i = 3; i < tokens.size(); ++i) {
            auto input = load_module_file(tokens[i]);
            if (!input) return;
            modules.push_back(std::move(*input));
        }
        auto joined = registry_.join_federation_execution(tokens[1], tokens[2], modules);
        if (!joined.ok()) {
            fail(joined.error());
            return;
        }
        out_ << "joined " << joined->federate << " handle=" << joined->handle
             << " generation=" << joined->generation << "\n";
        succeed();
    }

    void run_mom(const std::vector<std::string>& tokens, std::size_t line_number) {
        if (tokens.size() != 2) {
            syntax(line_number, "usage: mom <fedName>");
            return;
        }
        auto snapshot = registry_.mom_snapshot(tokens[1]);
        if (!snapshot.ok()) {
            fail(snapshot.error());
            return;
        }
        out_ << "mom federation=" << tokens[1] << " generation=" << snapshot->generation << "\n";
        out_ << "mom mim=" << snapshot->mim_designator << "\n";
        out_ << "mom modules=" << list_joined(snapshot->fom_module_designator_list) << "\n";
        for (const auto& [federate, modules] : snapshot->federate_module_lists) {
            out_ << "mom federate=" << federate << " modules=" << list_joined(modules) << "\n";
        }
        emit_payload("fdd", snapshot->current_fdd);
        succeed();
    }

    static std::string list_joined(const std::vector<std::string>& items) {
        std::string out;
        for (const auto& item : items) {
            if (!out.empty()) out.push_back(',');
            out += item;
        }
        return out;
    }

    // Payload framing: `<tag>-begin` / `<tag>-end` marker lines around the
    // exact bytes; the advertised byte count disambiguates a missing final
    // newline.
    void emit_payload(const std::string& tag, const std::string& payload) {
        out_ << tag << "-bytes " << payload.size() << "\n";
        out_ << tag << "-begin\n";
        out_ << payload;
        if (payload.empty() || payload.back() != '\n') out_ << "\n";
        out_ << tag << "-end\n";
    }

    void run_reqmod(const std::vector<std::string>& tokens, std::size_t line_number) {
        if (tokens.size() != 4) {
            syntax(line_number, "usage: reqmod <fedName> federation|federate:<name> <index>");
            return;
        }
        MomScope scope;
        if (tokens[2] == "federation") {
            scope = MomScope::federation();
        } else if (tokens[2].rfind("federate:", 0) == 0) {
            scope = MomScope::for_federate(tokens[2].substr(9));
        } else {
            syntax(line_number, "scope must be 'federation' or 'federate:<name>'");
            return;
        }
        std::size_t index = 0;
        try {
            index = static_cast<std::size_t>(std::stoul(tokens[3]));
        } catch (...) {
            syntax(line_number, "index '" + tokens[3] + "' is not a number");
            return;
        }
        auto report = registry_.request_module_data(tokens[1], scope, index);
        if (!report.ok()) {
            fail(report.error());
            return;
        }
        out_ << "report module index=" << index << "\n";
        emit_payload("payload", report->payload);
        succeed();
    }

    void run_reqmim(const std::vector<std::string>& tokens, std::size_t line_number) {
        if (tokens.size() != 2) {
            syntax(line_number, "usage: reqmim <fedName>");
            return;
        }
        auto report = registry_.request_mim_data(tokens[1]);
        if (!report.ok()) {
            fail(report.error());
            return;
        }
        out_ << "report mim\n";
        emit_payload("payload", report->payload);
        succeed();
    }

    void run_handle(const std::vector<std::string>& tokens, std::size_t line_number) {
        if (tokens.size() != 3) {
            syntax(line_number, "usage: handle <fedName> <className>");
            return;
        }
        auto handle = registry_.get_object_class_handle(tokens[1], tokens[2]);
        if (!handle.ok()) {
            fail(handle.error());
            return;
        }
        out_ << "handle " << handle->fqn << " = " << handle->handle << "\n";
        succeed();
    }

    void run_declare(const std::vector<std::string>& tokens, std::size_t line_number) {
        if (tokens.size() != 4) {
            syntax(line_number, "usage: " + tokens[0] + " <fedName> <federate> <className>");
            return;
        }
        const auto error = tokens[0] == "publish"
                               ? registry_.publish(tokens[1], tokens[2], tokens[3])
                               : registry_.subscribe(tokens[1], tokens[2], tokens[3]);
        if (error) {
            fail(*error);
            return;
        }
        succeed();
    }

    void run_resign(const std::vector<std::string>& tokens, std::size_t line_number) {
        if (tokens.size() != 3) {
            syntax(line_number, "usage: resign <fedName> <federate>");
            return;
        }
        if (const auto error = registry_.resign_federate(tokens[1], tokens[2])) {
            fail(*error);
            return;
        }
        succeed();
    }

    void run_destroy(const std::vector<std::string>& tokens, std::size_t line_number) {
        if (tokens.size() != 2) {
            syntax(line_number, "usage: destroy <fedName>");
            return;
        }
        if (const auto error = registry_.destroy_federation_execution(tokens[1])) {
            fail(*error);
            return;
        }
        succeed();
    }

    void print_trace() {
        for (const auto& name : registry_.federation_names()) {
            const auto fed = registry_.find(name);
            if (!fed) continue;
            for (const auto& event : fed->event_log) {
                out_ << "trace " << name << " " << event.kind;
                if (!event.actor.empty()) out_ << " " << event.actor;
                if (!event.modules.empty()) out_ << " modules=" << list_joined(event.modules);
                if (!event.detail.empty()) out_ << " " << event.detail;
                out_ << " generation=" << event.generation << "\n";
            }
        }
    }

    const ScenarioOptions& options_;
    std::ostream& out_;
    FederationRegistry registry_;
    CommandStatus last_;
    ScenarioResult result_;
    bool syntax_error_ = false;
};

}  // namespace

ScenarioResult run_scenario(std::string_view script, const ScenarioOptions& options,
                            std::ostream& out) {
    return ScenarioRunner(options, out).run(script);
}

}  // namespace fomforge
