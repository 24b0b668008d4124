// Command-line front end: parse flags, run one command, print the report verbatim.
#include <cstdio>
#include <string>

#include "CLI11.hpp"

#include "breuil/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"exact semilinear algebra for rank-3 filtered Frobenius modules"};
    breuil::RunOptions opt;
    app.add_option("--command", opt.command,
                   "validate | gauge | gauge-modp | monodromy | etale | fl | dims | selftest")
        ->required()
        ->check(CLI::IsMember({"validate", "gauge", "gauge-modp", "monodromy", "etale", "fl",
                               "dims", "selftest"}));
    app.add_option("--input", opt.input_path, "input document (JSON); defaults are used if absent");
    app.add_option("--precision", opt.precision, "override the p-adic precision N");
    app.add_option("--fil", opt.fil, "override the filtration truncation M");
    app.add_option("--seed", opt.seed, "override the run seed");
    app.add_option("--format", opt.format, "text (default) or machine (canonical JSON)")
        ->check(CLI::IsMember({"text", "machine"}));
    app.add_flag("--transcript", opt.transcript, "include per-step gauge records");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e); // prints help or the error message
        return code == 0 ? 0 : 1;    // usage problems are input errors
    }

    const breuil::RunResult r = breuil::run_command(opt);
    std::fputs(r.report.c_str(), stdout);
    return r.exit_code;
}
