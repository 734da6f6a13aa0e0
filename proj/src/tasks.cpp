#include "novikov_spectra/tasks.hpp"

#include "novikov_spectra/oracle.hpp"

#include <gmp.h>
#include <openssl/opensslv.h>

namespace spectra::tasks {

using io::Json;

Task parse_task(const std::string& name)
{
    if (name == "spectra")
        return Task::Spectra;
    if (name == "axioms")
        return Task::Axioms;
    if (name == "appendix")
        return Task::Appendix;
    if (name == "oracle")
        return Task::Oracle;
    throw InputError("usage", "unknown task '" + name + "'");
}

const char* to_string(Task t)
{
    switch (t) {
    case Task::Spectra:
        return "spectra";
    case Task::Axioms:
        return "axioms";
    case Task::Appendix:
        return "appendix";
    case Task::Oracle:
        return "oracle";
    }
    return "?";
}

suites::SuiteResult oracle_fixtures(const io::Workspace& ws)
{
    suites::SuiteResult r{"oracle-fixtures", {}, {}};
    EngineOptions eo;
    eo.floor = ws.floor;
    for (const auto& cf : ws.complexes) {
        if (static_cast<long>(cf.complex->orbits().size()) > ws.oracle_cap) {
            r.rows.push_back({cf.name, true, true, {}, "above the oracle cap"});
            continue;
        }
        for (const auto& nc : cf.classes) {
            std::string id = cf.name + "/" + nc.id;
            try {
                auto e = spectral_invariant(*cf.complex, nc.chain, nc.degree, eo).rho;
                auto o = oracle_rho(*cf.complex, nc.chain, nc.degree);
                r.add(id, e == o, "engine=" + e.to_string() + " oracle=" + o.to_string());
            } catch (const Error& e) {
                r.add(id, false, std::string("[") + e.code() + "] " + e.what());
            }
        }
    }
    for (const auto& mf : ws.morse) {
        if (static_cast<long>(mf.morse.points.size()) > ws.oracle_cap)
            continue;
        for (const auto& eps : mf.epsilons) {
            auto c = build_small_floer(mf.morse, eps, mf.gamma);
            for (const auto& [id, a] : mf.quantum) {
                std::string inst = mf.name + "/" + id + "/eps=" + format_rational(eps);
                try {
                    auto rep = flat_chain(c, a, mf.classes);
                    long degree = mf.morse.half_dim() - a.degree(mf.classes);
                    auto e = spectral_invariant(c, rep, degree, eo).rho;
                    auto o = oracle_rho(c, rep, degree);
                    r.add(inst, e == o, "engine=" + e.to_string() + " oracle=" + o.to_string());
                } catch (const Error& e) {
                    r.add(inst, false, std::string("[") + e.code() + "] " + e.what());
                }
            }
        }
    }
    return r;
}

std::vector<suites::SuiteResult> run_task(const io::Workspace& ws, Task t)
{
    std::vector<suites::SuiteResult> out;
    auto seed = ws.seed;
    switch (t) {
    case Task::Spectra:
        out.push_back(suites::rho_table(ws));
        out.push_back(suites::spectrality(ws, seed, ws.random.instances));
        break;
    case Task::Axioms:
        for (const auto& mf : ws.morse)
            out.push_back(suites::normalization(mf));
        out.push_back(suites::continuity(seed + 1, ws.random.continuity_pairs));
        for (const auto& mf : ws.morse)
            if (mf.products)
                out.push_back(suites::triangle(mf));
        out.push_back(suites::monodromy(ws, seed + 2, ws.random.seidel_shifts));
        out.push_back(suites::spectrality(ws, seed + 3, ws.random.instances));
        out.push_back(suites::chain_maps(ws));
        out.push_back(suites::mutations(seed + 4));
        out.push_back(suites::relabeling(seed + 5, 20));
        out.push_back(suites::projective(ws, seed + 6, 5));
        break;
    case Task::Appendix:
        out.push_back(suites::scalars(seed + 7, 1000));
        out.push_back(suites::balls(seed + 8, ws.random.balls));
        out.push_back(suites::ball_images(seed + 9, ws.random.balls));
        out.push_back(suites::functionals(ws));
        out.push_back(suites::cochain_map(ws, seed + 10));
        out.push_back(suites::continuous_vs_finite(ws));
        break;
    case Task::Oracle:
        out.push_back(oracle_fixtures(ws));
        out.push_back(suites::oracle(seed + 11, ws.random.instances, 10, ws.oracle_cap, ws.floor));
        break;
    }
    return out;
}

Json environment_stamp()
{
    Json j;
#if defined(__clang__)
    j["compiler"] = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
    j["compiler"] = std::string("gcc ") + __VERSION__;
#else
    j["compiler"] = "unknown";
#endif
    j["cxx_standard"] = static_cast<long>(__cplusplus);
    j["gmp"] = gmp_version;
    j["openssl"] = OPENSSL_VERSION_TEXT;
#ifdef NDEBUG
    j["build"] = "release";
#else
    j["build"] = "debug";
#endif
    return j;
}

Json report(const io::Workspace& ws, Task t, const std::vector<suites::SuiteResult>& results)
{
    Json j;
    j["schema"] = 1;
    j["task"] = to_string(t);
    j["mode"] = ws.mode == io::Mode::Float ? "float" : "rational";
    j["seed"] = ws.seed;
    j["floor"] = io::ext_to(ws.floor);
    j["oracle_cap"] = ws.oracle_cap;
    j["environment"] = environment_stamp();
    Json fx = Json::array();
    for (const auto& h : ws.hashes)
        fx.push_back({{"name", h.name}, {"kind", h.kind}, {"path", h.path}, {"sha256", h.sha256}});
    j["fixtures"] = std::move(fx);
    Json ss = Json::array();
    size_t checks = 0, failures = 0, verified = 0;
    for (const auto& r : results) {
        ss.push_back(r.to_json());
        checks += r.rows.size();
        failures += r.failures();
        verified += r.verified();
    }
    j["suites"] = std::move(ss);
    j["summary"] = {{"suites", results.size()},
                    {"checks", checks},
                    {"verified", verified},
                    {"failures", failures},
                    {"status", failures == 0 ? "PASS" : "FAIL"}};
    return j;
}

}  // namespace spectra::tasks
