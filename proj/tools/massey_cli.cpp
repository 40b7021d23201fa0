#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "massey/cli.hpp"

int main(int argc, char** argv) {
    massey::cli::JobSpec job;
    CLI::App app{"Cohomology, Massey products and embedding problems over F_p"};
    app.set_version_flag("--version", massey::io::kReportVersion);
    std::uint32_t p = 0;
    std::size_t n = 0;
    std::string strategy;
    app.add_option("command", job.command, "group-info | cohomology | cup | massey | dwyer | embed | hstar | local-global")
        ->required();
    app.add_option("--group", job.group_path, "group descriptor (JSON)")->required();
    auto* p_opt = app.add_option("--p", p, "prime for the coefficients");
    auto* n_opt = app.add_option("--n", n, "cohomological degree (cohomology)");
    app.add_option("--chars", job.chars, "comma-separated characters: name | zero | coord:k | proj:i:j, '-' negates");
    app.add_option("--module", job.module, "trivial | trivialN | natural | colvecN | psi | psi_prime");
    app.add_option("--subgroups", job.subgroups, "all-cyclic | whole | trivial | g,h;k (generators)");
    auto* s_opt = app.add_option("--strategy", strategy, "enumerate | dwyer")->check(CLI::IsMember({"enumerate", "dwyer"}));
    app.add_option("--budget", job.budget, "enumeration and search budget");
    app.add_option("--format", job.format, "json | text")->check(CLI::IsMember({"json", "text"}));
    app.add_flag("--realize", job.realize, "embed: also ask for a surjective U4 realization");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return massey::cli::kInputError;
    }
    if (*p_opt) job.p = p;
    if (*n_opt) job.n = n;
    if (*s_opt) job.strategy = strategy;
    const auto out = massey::cli::run(job);
    std::cout << out.report;
    std::cerr << out.diagnostics;
    return out.exit_code;
}
