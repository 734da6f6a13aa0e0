#include "novikov_spectra/tasks.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace spectra;

int main(int argc, char** argv)
{
    CLI::App app{"Spectral invariants of filtered Floer-type complexes"};
    std::string manifest, task = "spectra", mode, floor, out;
    std::optional<std::uint64_t> seed;
    std::optional<long> cap;
    app.add_option("manifest", manifest, "workspace manifest (JSON)")->required();
    app.add_option("--task", task, "spectra | axioms | appendix | oracle")
        ->check(CLI::IsMember({"spectra", "axioms", "appendix", "oracle"}));
    app.add_option("--mode", mode, "rational | float")->check(CLI::IsMember({"rational", "float"}));
    app.add_option("--floor", floor, "truncation floor p/q, or -inf");
    app.add_option("--seed", seed, "seed for generated instances");
    app.add_option("--out", out, "report path; '-' or empty for stdout");
    app.add_option("--oracle-cap", cap, "largest complex handed to the oracle");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        io::Overrides o;
        if (!mode.empty())
            o.mode = mode == "float" ? io::Mode::Float : io::Mode::Rational;
        if (!floor.empty())
            o.floor = ExtReal::parse(floor);
        o.seed = seed;
        if (!out.empty())
            o.out = out;
        o.oracle_cap = cap;
        auto ws = io::load_workspace(manifest, o);
        auto t = tasks::parse_task(task);
        auto results = tasks::run_task(ws, t);
        auto rep = tasks::report(ws, t, results);
        std::string text = rep.dump(2) + "\n";
        if (ws.out.empty() || ws.out == "-") {
            std::cout << text;
        } else {
            std::ofstream f(ws.out);
            if (!f)
                throw InputError("io", "cannot write " + ws.out);
            f << text;
        }
        for (const auto& r : results)
            std::cerr << (r.ok() ? "PASS " : "FAIL ") << r.name << " (" << r.verified() << "/" << r.rows.size()
                      << " verified, " << r.failures() << " failed)\n";
        return rep["summary"]["status"] == "PASS" ? 0 : 1;
    } catch (const io::LoadError& e) {
        for (const auto& i : e.issues())
            std::cerr << "error: " << i.file << ": [" << i.code << "] " << i.message << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "error: [" << e.code() << "] " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: [" << e.code() << "] " << e.what() << "\n";
        return 1;
    }
}
