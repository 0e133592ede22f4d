#include <cstdio>
#include <fstream>

#include "CLI11.hpp"
#include "cybmw/acceptance.hpp"

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    cybmw::AcceptanceOptions opt;
    std::string json_out;
    app.add_flag("--corrupt-rules", opt.corrupt_rules, "swap λ for λ^-1 in the crossing rule");
    app.add_option("--only", opt.only, "run a single criterion")->check(CLI::Range(1, 10));
    app.add_option("--max-n", opt.max_n)->check(CLI::Range(1, 4));
    app.add_option("--threads", opt.threads)->check(CLI::PositiveNumber);
    app.add_option("--json", json_out, "write the full report here");
    CLI11_PARSE(app, argc, argv);

    auto rs = cybmw::run_acceptance(opt);
    bool all = true;
    for (const auto& r : rs) {
        std::printf("criterion %2d %-36s %s (%.2fs)\n", r.id, r.name.c_str(), r.pass ? "PASS" : "FAIL", r.seconds);
        if (!r.pass) std::printf("  %s\n", cybmw::acceptance_json({r})[0]["detail"].dump().c_str());
        all = all && r.pass;
    }
    if (!json_out.empty()) std::ofstream(json_out) << cybmw::acceptance_json(rs).dump(2) << "\n";
    return all ? 0 : 1;
}
