// JSON-in, JSON/table-out front end.  One subcommand per command; input from
// --input or stdin; exit codes: 0 ok, 1 schema, 2 domain, 3 budget.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "nilwreath/run.hpp"

namespace {

struct Common {
    std::string input = "-";
    std::string output = "json";
    long long budget = 0;  // 0 = unset; the option validates positivity
    int jobs = 1;
};

std::string read_all(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw nilwreath::SchemaError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int fail(const char* code, const std::string& message, int exit_code) {
    nilwreath::json err;
    err["error"] = code;
    err["message"] = message;
    std::cerr << err.dump() << "\n";
    return exit_code;
}

int execute(const std::string& command, const Common& c) {
    using namespace nilwreath;
    try {
        json doc;
        try {
            doc = json::parse(read_all(c.input));
        } catch (const json::parse_error& e) {
            // what() carries the parse location (line/column and byte).
            throw SchemaError(std::string("malformed JSON: ") + e.what());
        }
        RunOptions opt;
        if (c.budget > 0) {
            opt.budget = c.budget;
        } else if (const char* env = std::getenv("NILWREATH_BUDGET")) {
            Int v;
            if (!parse_int_checked(env, v) || v <= 0 || !v.fits_slong_p())
                throw SchemaError("NILWREATH_BUDGET must be a positive integer");
            opt.budget = v.get_si();
        }
        opt.jobs = c.jobs;
        json payload = extract_payload(doc, command);
        json resp = run_command(command, payload, opt);
        if (c.output == "table") {
            if (auto table = render_table(command, payload, resp)) {
                std::cout << *table;
                return 0;
            }
        }
        std::cout << resp.dump(2) << "\n";
        return 0;
    } catch (const SchemaError& e) {
        return fail("schema", e.what(), 1);
    } catch (const DomainError& e) {
        return fail("domain", e.what(), 2);
    } catch (const BudgetError& e) {
        return fail("budget", e.what(), 3);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), 4);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact self-similarity invariants of torsion-free nilpotent groups"};
    app.require_subcommand(1);
    Common common;
    int rc = 0;
    for (const std::string& name : nilwreath::command_names()) {
        CLI::App* sub = app.add_subcommand(name, "run " + name + " on a JSON request");
        sub->add_option("--input", common.input, "input JSON file, - for stdin");
        sub->add_option("--output", common.output, "output format")
            ->check(CLI::IsMember({"json", "table"}));
        sub->add_option("--budget", common.budget, "override the command's primary cap")
            ->check(CLI::PositiveNumber);
        sub->add_option("--jobs", common.jobs, "worker threads for scans")
            ->check(CLI::Range(1, 64));
        sub->callback([&rc, &common, name]() { rc = execute(name, common); });
    }
    CLI11_PARSE(app, argc, argv);
    return rc;
}
