// cdm: command-line front end for the cognitive data model engine.
//
// Subcommands: init, exec, repl, validate, stats, export (dot|sql), trace.
// Exit codes: 0 success, 1 domain error, 2 usage or query parse error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "cdm/cql.hpp"
#include "cdm/relational.hpp"
#include "cdm/session.hpp"
#include "cdm/storage.hpp"

namespace {

struct CliConfig {
    std::string log_path;
    bool strict_tree = false;
    std::size_t path_limit = 64;
    std::string format = "text";

    cdm::EvalOptions eval_options() const {
        cdm::EvalOptions opts;
        opts.strict_tree = strict_tree;
        opts.path_limits.max_paths = path_limit;
        return opts;
    }
};

std::string render(const cdm::ResultSet& r, const CliConfig& cfg) {
    return cfg.format == "json" ? cdm::render_json(r) : cdm::render_text(r);
}

void add_common_flags(CLI::App* cmd, CliConfig& cfg, bool with_log = true) {
    if (with_log) {
        cmd->add_option("--log", cfg.log_path, "Path of the model log file")
            ->envname("CDM_LOG")
            ->required();
    }
    cmd->add_option("--format", cfg.format, "Result rendering")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    cmd->add_flag("--strict-tree", cfg.strict_tree,
                  "Reject associations that would close an undirected cycle");
    cmd->add_option("--path-limit", cfg.path_limit, "Maximum number of paths to enumerate")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

// Runs already-parsed statements against an open session; mutations hit
// the log file before their ack is printed.
void run_statements(cdm::LogFile& session, const std::vector<cdm::Statement>& statements,
                    const CliConfig& cfg) {
    for (const cdm::Statement& s : statements) {
        cdm::ResultSet result = cdm::evaluate(session.model(), s, cfg.eval_options());
        if (s.is_mutation()) session.sync();
        std::cout << render(result, cfg);
    }
    std::cout.flush();
}

int cmd_exec(const CliConfig& cfg, const std::string& script_path, const std::string& query) {
    std::string source;
    if (!query.empty()) {
        source = query;
    } else if (!script_path.empty()) {
        std::ifstream in(script_path, std::ios::binary);
        if (!in) throw cdm::Error(cdm::Errc::io_error, "cannot open script: " + script_path);
        std::ostringstream buf;
        buf << in.rdbuf();
        source = buf.str();
    } else {
        throw cdm::Error(cdm::Errc::parse_error, "exec needs a script file or --query");
    }
    std::vector<cdm::Statement> statements = cdm::parse_script(source);
    cdm::LogFile session(cfg.log_path);
    run_statements(session, statements, cfg);
    return 0;
}

int cmd_repl(const CliConfig& cfg) {
    cdm::LogFile session(cfg.log_path);
    std::string buffer;
    std::string line;
    std::cerr << "cdm> " << std::flush;
    while (std::getline(std::cin, line)) {
        if (line == "\\q") break;
        if (buffer.empty() && line.find_first_not_of(" \t\r") == std::string::npos) {
            std::cerr << "cdm> " << std::flush;
            continue;
        }
        buffer += line;
        buffer += '\n';
        std::vector<cdm::Statement> statements;
        try {
            statements = cdm::parse_script(buffer);
        } catch (const cdm::ParseError& e) {
            if (e.at_end()) {  // statement continues on the next line
                std::cerr << "...> " << std::flush;
                continue;
            }
            std::cerr << "error: " << e.what() << "\n";
            buffer.clear();
            std::cerr << "cdm> " << std::flush;
            continue;
        }
        buffer.clear();
        for (const cdm::Statement& s : statements) {
            try {
                cdm::ResultSet result = cdm::evaluate(session.model(), s, cfg.eval_options());
                if (s.is_mutation()) session.sync();
                std::cout << render(result, cfg) << std::flush;
            } catch (const cdm::Error& e) {
                std::cerr << "error: " << e.what() << "\n";
            }
        }
        std::cerr << "cdm> " << std::flush;
    }
    return 0;
}

int cmd_query_only(const CliConfig& cfg, cdm::StatementKind kind, const std::string& label) {
    // Read-only subcommands do not need the lock; work on a replayed copy.
    cdm::Model m = cdm::load_model_file(cfg.log_path);
    cdm::Statement s;
    s.kind = kind;
    s.arg1 = label;
    std::cout << render(cdm::evaluate(m, s, cfg.eval_options()), cfg);
    return 0;
}

int cmd_export(const CliConfig& cfg, const std::string& what, const std::string& out_path) {
    cdm::Model m = cdm::load_model_file(cfg.log_path);
    std::string text = what == "dot" ? cdm::export_dot(m)
                                     : cdm::emit_sql(cdm::to_relational(m));
    if (out_path.empty()) {
        std::cout << text;
    } else {
        cdm::write_text_file(out_path, text);
        std::cerr << "wrote " << out_path << " (" << text.size() << " bytes)\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cognitive data model engine"};
    app.require_subcommand(1);

    CliConfig cfg;
    std::string script_path, query, export_out, trace_label;

    CLI::App* init = app.add_subcommand("init", "Create an empty model log");
    init->add_option("--log", cfg.log_path, "Path of the new log file")
        ->envname("CDM_LOG")
        ->required();

    CLI::App* exec = app.add_subcommand("exec", "Run statements from a file or --query");
    add_common_flags(exec, cfg);
    exec->add_option("script", script_path, "Script file with statements");
    exec->add_option("--query", query, "Statements given inline");

    CLI::App* repl = app.add_subcommand("repl", "Interactive session (\\q to quit)");
    add_common_flags(repl, cfg);

    CLI::App* validate = app.add_subcommand("validate", "Check invariants and report warnings");
    add_common_flags(validate, cfg);

    CLI::App* stats = app.add_subcommand("stats", "Model counters");
    add_common_flags(stats, cfg);

    CLI::App* exp = app.add_subcommand("export", "Write the model as DOT or SQL");
    std::string export_kind;
    exp->add_option("kind", export_kind, "dot or sql")
        ->required()
        ->check(CLI::IsMember({"dot", "sql"}));
    add_common_flags(exp, cfg);
    exp->add_option("--out", export_out, "Output file (stdout when omitted)");

    CLI::App* trace = app.add_subcommand("trace", "Participation history of a thing");
    add_common_flags(trace, cfg);
    trace->add_option("label", trace_label, "Label of the thing")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (init->parsed()) {
            cdm::LogFile::init(cfg.log_path);
            return 0;
        }
        if (exec->parsed()) return cmd_exec(cfg, script_path, query);
        if (repl->parsed()) return cmd_repl(cfg);
        if (validate->parsed()) return cmd_query_only(cfg, cdm::StatementKind::validate, "");
        if (stats->parsed()) return cmd_query_only(cfg, cdm::StatementKind::stats, "");
        if (exp->parsed()) return cmd_export(cfg, export_kind, export_out);
        if (trace->parsed()) return cmd_query_only(cfg, cdm::StatementKind::trace, trace_label);
    } catch (const cdm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.is_parse_error() ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
