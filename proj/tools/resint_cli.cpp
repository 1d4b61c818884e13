#include "resint/session.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace resint;

namespace {

std::uint64_t env_u64(const char* name, std::uint64_t fallback) {
    const char* v = std::getenv(name);
    return v ? std::strtoull(v, nullptr, 10) : fallback;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"resint: residual intersections, Koszul annihilators and "
                 "residual approximation complexes over graded polynomial rings"};
    app.require_subcommand(1);

    std::string session_path, out_path;
    std::uint64_t seed = env_u64("RESINT_SEED", 0);
    int max_degree = static_cast<int>(env_u64("RESINT_MAX_DEGREE", 40));

    CLI::App* run = app.add_subcommand("run", "run a session file and print a JSON report");
    run->add_option("session", session_path, "session file (.resint)")->required();
    run->add_option("-o,--out", out_path, "write the report to a file instead of stdout");
    run->add_option("--seed", seed, "seed for randomized tasks (default: RESINT_SEED or 0)");
    run->add_option("--max-degree", max_degree,
                    "degree guard for Groebner computations (default: RESINT_MAX_DEGREE or 40)");

    CLI11_PARSE(app, argc, argv);

    gb_degree_guard() = max_degree;

    std::ifstream f(session_path);
    if (!f) {
        std::cerr << "error: cannot open session file '" << session_path << "'\n";
        return 2;
    }
    std::stringstream buf;
    buf << f.rdbuf();

    json report;
    try {
        report = run_session_text(buf.str(), seed);
    } catch (const session_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const parse_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const internal_error& e) {
        std::cerr << "internal consistency error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }

    std::string text = report.dump(2);
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(out_path);
        out << text << "\n";
    }
    return 0;
}
