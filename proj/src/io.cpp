#include "novikov_spectra/io.hpp"

#include <openssl/evp.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace spectra::io {

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& what)
{
    throw InputError("schema", where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where)
{
    if (!j.is_object())
        schema(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        schema(where, std::string("missing field '") + key + "'");
    return *it;
}

const Json* optional_field(const Json& j, const char* key)
{
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

std::string text(const Json& j, const std::string& where)
{
    if (!j.is_string())
        schema(where, "expected a string");
    return j.get<std::string>();
}

long integer(const Json& j, const std::string& where)
{
    if (!j.is_number_integer())
        schema(where, "expected an integer");
    return j.get<long>();
}

const Json& array(const Json& j, const std::string& where)
{
    if (!j.is_array())
        schema(where, "expected an array");
    return j;
}

GammaElement element_from(const Json& j, const GammaGroup& g, const std::string& where)
{
    array(j, where);
    if (static_cast<int>(j.size()) != g.rank())
        schema(where, "exponent has " + std::to_string(j.size()) + " coordinates, Gamma has rank " +
                          std::to_string(g.rank()));
    GammaElement a;
    for (size_t i = 0; i < j.size(); ++i)
        a.coords.push_back(integer(j[i], where + "/" + std::to_string(i)));
    return a;
}

Json element_to(const GammaElement& a)
{
    Json j = Json::array();
    for (long x : a.coords)
        j.push_back(x);
    return j;
}

std::vector<std::pair<std::string, Rational>> weighted_points(const Json& j, Mode mode, const std::string& where)
{
    std::vector<std::pair<std::string, Rational>> out;
    array(j, where);
    for (size_t i = 0; i < j.size(); ++i) {
        std::string w = where + "/" + std::to_string(i);
        if (!j[i].is_array() || j[i].size() != 2)
            schema(w, "expected [point, coefficient]");
        out.emplace_back(text(j[i][0], w + "/0"), rational_from(j[i][1], mode, w + "/1"));
    }
    return out;
}

QuantumClass quantum_from(const Json& j, const GammaRef& g, Mode mode, const std::string& where)
{
    std::vector<QuantumTerm> terms;
    array(j, where);
    for (size_t i = 0; i < j.size(); ++i) {
        std::string w = where + "/" + std::to_string(i);
        if (!j[i].is_array() || j[i].size() != 3)
            schema(w, "expected [coefficient, class, exponent]");
        Rational coef = rational_from(j[i][0], mode, w + "/0");
        std::string cls = text(j[i][1], w + "/1");
        GammaElement a = element_from(j[i][2], *g, w + "/2");
        terms.push_back({coef, cls, a});
    }
    return QuantumClass(g, Direction::Upward, std::move(terms));
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("io", "cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Json parse_text(const std::string& bytes, const std::string& path)
{
    try {
        return Json::parse(bytes);
    } catch (const nlohmann::json::parse_error& e) {
        size_t line = 1, col = 1;
        for (size_t i = 0; i < e.byte && i < bytes.size(); ++i) {
            if (bytes[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw InputError("parse", path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
    }
}

std::map<std::string, std::string> name_table(const Json& manifest, const char* key)
{
    std::map<std::string, std::string> out;
    const Json* j = optional_field(manifest, key);
    if (!j)
        return out;
    if (!j->is_object())
        schema(std::string("/") + key, "expected an object of name -> path");
    for (const auto& [name, path] : j->items())
        out[name] = text(path, std::string("/") + key + "/" + name);
    return out;
}

}  // namespace

Rational rational_from(const Json& j, Mode mode, const std::string& where)
{
    if (j.is_number_integer())
        return Rational(j.get<long>());
    if (j.is_number_float()) {
        if (mode == Mode::Rational)
            schema(where, "floating number in rational mode; write it as a \"p/q\" string");
        return Rational(j.get<double>());
    }
    if (!j.is_string())
        schema(where, "expected a rational");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const InputError& e) {
        throw InputError("parse", where + ": " + e.what());
    }
}

Json rational_to(const Rational& q) { return format_rational(q); }

Json ext_to(const ExtReal& x) { return x.to_string(); }

GammaRef gamma_from(const Json& j, Mode mode, const std::string& where)
{
    const Json& om = array(field(j, "omega", where), where + "/omega");
    const Json& c1 = array(field(j, "c1", where), where + "/c1");
    std::vector<Rational> w;
    std::vector<long> c;
    for (size_t i = 0; i < om.size(); ++i)
        w.push_back(rational_from(om[i], mode, where + "/omega/" + std::to_string(i)));
    for (size_t i = 0; i < c1.size(); ++i)
        c.push_back(integer(c1[i], where + "/c1/" + std::to_string(i)));
    try {
        return std::make_shared<const GammaGroup>(std::move(w), std::move(c), mode == Mode::Float);
    } catch (const StructuralError& e) {
        throw InputError("invariant", where + ": " + e.what());
    }
}

Json gamma_to(const GammaGroup& g)
{
    Json j;
    j["omega"] = Json::array();
    for (const auto& w : g.omega_values())
        j["omega"].push_back(rational_to(w));
    j["c1"] = Json::array();
    for (long c : g.c1_values())
        j["c1"].push_back(c);
    return j;
}

NovikovScalar scalar_from(const Json& j, const GammaRef& gamma, Direction dir, Mode mode, const std::string& where)
{
    array(j, where);
    std::map<GammaElement, Rational> terms;
    for (size_t i = 0; i < j.size(); ++i) {
        std::string w = where + "/" + std::to_string(i);
        if (!j[i].is_array() || j[i].size() != 2)
            schema(w, "expected [coefficient, exponent]");
        terms[element_from(j[i][1], *gamma, w + "/1")] += rational_from(j[i][0], mode, w + "/0");
    }
    std::vector<NovikovTerm> out;
    for (const auto& [e, c] : terms)
        if (c != 0)
            out.push_back({c, e});
    return NovikovScalar(gamma, dir, std::move(out));
}

Json scalar_to(const NovikovScalar& s)
{
    Json j = Json::array();
    for (const auto& t : s.terms())
        j.push_back(Json::array({rational_to(t.coef), element_to(t.exponent)}));
    return j;
}

FilteredComplex complex_from(const Json& j, Mode mode, const std::string& where)
{
    GammaRef g = gamma_from(field(j, "gamma", where), mode, where + "/gamma");
    std::vector<Orbit> orbits;
    const Json& os = array(field(j, "orbits", where), where + "/orbits");
    for (size_t i = 0; i < os.size(); ++i) {
        std::string w = where + "/orbits/" + std::to_string(i);
        std::string id = text(field(os[i], "id", w), w + "/id");
        Rational action = rational_from(field(os[i], "action", w), mode, w + "/action");
        long degree = integer(field(os[i], "degree", w), w + "/degree");
        orbits.push_back({id, action, degree});
    }
    std::vector<BoundaryEntry> entries;
    if (const Json* bs = optional_field(j, "boundary")) {
        array(*bs, where + "/boundary");
        for (size_t i = 0; i < bs->size(); ++i) {
            std::string w = where + "/boundary/" + std::to_string(i);
            const Json& b = (*bs)[i];
            std::string from = text(field(b, "from", w), w + "/from"), to = text(field(b, "to", w), w + "/to");
            auto scalar = scalar_from(field(b, "scalar", w), g, Direction::Downward, mode, w + "/scalar");
            BoundaryEntry e{from, to, scalar, std::nullopt};
            if (const Json* cap = optional_field(b, "from_cap"))
                e.from_cap = element_from(*cap, *g, w + "/from_cap");
            entries.push_back(std::move(e));
        }
    }
    std::set<std::string> ids;
    for (const auto& o : orbits)
        if (!ids.insert(o.id).second)
            throw InputError("invariant", where + ": duplicate orbit id '" + o.id + "'");
    for (const auto& e : entries)
        if (!ids.count(e.from) || !ids.count(e.to))
            throw InputError("invariant", where + ": boundary entry " + e.from + " -> " + e.to +
                                              " names an unknown orbit");
    return FilteredComplex(g, std::move(orbits), std::move(entries));
}

Json complex_to(const FilteredComplex& c)
{
    Json j;
    j["gamma"] = gamma_to(*c.gamma());
    j["orbits"] = Json::array();
    for (const auto& o : c.orbits())
        j["orbits"].push_back({{"id", o.id}, {"action", rational_to(o.action)}, {"degree", o.degree}});
    j["boundary"] = Json::array();
    for (const auto& e : c.raw_boundary()) {
        Json b = {{"from", e.from}, {"to", e.to}, {"scalar", scalar_to(e.scalar)}};
        if (e.from_cap)
            b["from_cap"] = element_to(*e.from_cap);
        j["boundary"].push_back(std::move(b));
    }
    return j;
}

NovikovChain chain_from(const Json& j, const FilteredComplex& c, Mode mode, const std::string& where)
{
    array(j, where);
    std::vector<ChainTerm> terms;
    for (size_t i = 0; i < j.size(); ++i) {
        std::string w = where + "/" + std::to_string(i);
        if (!j[i].is_array() || j[i].size() != 3)
            schema(w, "expected [coefficient, orbit, cap]");
        std::string orbit = text(j[i][1], w + "/1");
        if (!c.has_orbit(orbit))
            throw InputError("invariant", w + ": unknown orbit '" + orbit + "'");
        Rational coef = rational_from(j[i][0], mode, w + "/0");
        Generator gen = c.generator(orbit, element_from(j[i][2], *c.gamma(), w + "/2"));
        terms.push_back({coef, gen});
    }
    try {
        return NovikovChain(std::move(terms));
    } catch (const StructuralError& e) {
        throw InputError("invariant", where + ": " + e.what());
    }
}

Json chain_to(const NovikovChain& a)
{
    Json j = Json::array();
    for (const auto& t : a.terms())
        j.push_back(Json::array({rational_to(t.coef), t.gen.orbit, element_to(t.gen.cap)}));
    return j;
}

DualFunctional functional_from(const Json& j, const GammaRef& gamma, Mode mode, const std::string& where)
{
    DualFunctional mu{gamma, {}, ExtReal::neg_inf()};
    if (const Json* t = optional_field(j, "threshold"))
        mu.threshold = rational_from(*t, mode, where + "/threshold");
    const Json& s = array(field(j, "support", where), where + "/support");
    for (size_t i = 0; i < s.size(); ++i) {
        std::string w = where + "/support/" + std::to_string(i);
        std::string orbit = text(field(s[i], "orbit", w), w + "/orbit");
        GammaElement cap = element_from(field(s[i], "cap", w), *gamma, w + "/cap");
        Rational value = rational_from(field(s[i], "value", w), mode, w + "/value");
        FunctionalPiece p{orbit, cap, std::nullopt, std::nullopt, value};
        if (const Json* st = optional_field(s[i], "step")) {
            p.step = element_from(*st, *gamma, w + "/step");
            if (p.step->is_zero())
                throw InputError("invariant", w + ": zero progression step");
        }
        if (const Json* n = optional_field(s[i], "count")) {
            if (!p.step)
                schema(w, "count without step");
            p.count = integer(*n, w + "/count");
            if (*p.count < 0)
                schema(w + "/count", "negative count");
        }
        mu.pieces.push_back(std::move(p));
    }
    return mu;
}

Json functional_to(const DualFunctional& mu)
{
    Json j;
    if (!mu.threshold.is_neg_inf())
        j["threshold"] = ext_to(mu.threshold);
    j["support"] = Json::array();
    for (const auto& p : mu.pieces) {
        Json s = {{"orbit", p.orbit}, {"cap", element_to(p.start)}};
        if (p.step)
            s["step"] = element_to(*p.step);
        if (p.count)
            s["count"] = *p.count;
        s["value"] = rational_to(p.value);
        j["support"].push_back(std::move(s));
    }
    return j;
}

std::string sha256_hex(const std::string& bytes)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw Error("io", "SHA-256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

const ComplexFixture& Workspace::complex(const std::string& name) const
{
    for (const auto& c : complexes)
        if (c.name == name)
            return c;
    throw InputError("reference", "no complex fixture named '" + name + "'");
}

const MorseFixture& Workspace::morse_fixture(const std::string& name) const
{
    for (const auto& m : morse)
        if (m.name == name)
            return m;
    throw InputError("reference", "no Morse fixture named '" + name + "'");
}

namespace {

std::string join_issues(const std::vector<Issue>& issues)
{
    std::string s;
    for (const auto& i : issues)
        s += (s.empty() ? "" : "\n") + i.file + ": [" + i.code + "] " + i.message;
    return s;
}

ComplexFixture load_complex(const std::string& name, const std::string& path, const Json& j, Mode mode)
{
    ComplexFixture f{name, path, std::make_shared<const FilteredComplex>(complex_from(j, mode, "")), {}};
    auto report = validate_complex(*f.complex);
    if (!report.ok())
        throw InputError("invariant", report.summary());
    if (const Json* cls = optional_field(j, "classes")) {
        array(*cls, "/classes");
        for (size_t i = 0; i < cls->size(); ++i) {
            std::string w = "/classes/" + std::to_string(i);
            std::string id = text(field((*cls)[i], "id", w), w + "/id");
            long degree = integer(field((*cls)[i], "degree", w), w + "/degree");
            NovikovChain chain = chain_from(field((*cls)[i], "chain", w), *f.complex, mode, w + "/chain");
            NamedClass nc{id, degree, chain};
            if (nc.chain.degree() && *nc.chain.degree() != nc.degree)
                throw InputError("invariant", w + ": chain has degree " + std::to_string(*nc.chain.degree()));
            if (!boundary_apply(*f.complex, nc.chain).is_zero())
                throw InputError("invariant", w + ": class representative is not a cycle");
            f.classes.push_back(std::move(nc));
        }
    }
    return f;
}

MorseFixture load_morse(const std::string& name, const std::string& path, const Json& j, Mode mode)
{
    MorseFixture f;
    f.name = name;
    f.path = path;
    f.gamma = gamma_from(field(j, "gamma", ""), mode, "/gamma");
    f.morse.dim = integer(field(j, "dim", ""), "/dim");
    const Json& pts = array(field(j, "points", ""), "/points");
    for (size_t i = 0; i < pts.size(); ++i) {
        std::string w = "/points/" + std::to_string(i);
        std::string id = text(field(pts[i], "id", w), w + "/id");
        Rational value = rational_from(field(pts[i], "value", w), mode, w + "/value");
        long index = integer(field(pts[i], "index", w), w + "/index");
        f.morse.points.push_back({id, value, index});
    }
    if (const Json* b = optional_field(j, "boundary")) {
        array(*b, "/boundary");
        for (size_t i = 0; i < b->size(); ++i) {
            std::string w = "/boundary/" + std::to_string(i);
            std::string from = text(field((*b)[i], "from", w), w + "/from"), to = text(field((*b)[i], "to", w), w + "/to");
            Rational coef = rational_from(field((*b)[i], "coef", w), mode, w + "/coef");
            f.morse.boundary.push_back({from, to, coef});
        }
    }
    if (const Json* b = optional_field(j, "betti")) {
        std::vector<long> betti;
        for (size_t i = 0; i < array(*b, "/betti").size(); ++i)
            betti.push_back(integer((*b)[i], "/betti/" + std::to_string(i)));
        f.morse.betti = betti;
    }
    auto report = validate_morse(f.morse);
    if (!report.ok())
        throw InputError("invariant", report.summary());

    f.classes.dim = f.morse.dim;
    const Json& cls = array(field(j, "classes", ""), "/classes");
    for (size_t i = 0; i < cls.size(); ++i) {
        std::string w = "/classes/" + std::to_string(i);
        std::string id = text(field(cls[i], "id", w), w + "/id");
        long degree = integer(field(cls[i], "degree", w), w + "/degree");
        auto chain = weighted_points(field(cls[i], "chain", w), mode, w + "/chain");
        auto cochain = weighted_points(field(cls[i], "cochain", w), mode, w + "/cochain");
        f.classes.classes.push_back({id, degree, chain, cochain});
        for (const auto& [p, x] : f.classes.classes.back().chain)
            f.morse.point(p);
        for (const auto& [p, x] : f.classes.classes.back().cochain)
            f.morse.point(p);
    }
    for (const auto& c : f.classes.classes)
        f.quantum.emplace_back(c.id, QuantumClass::basis(f.gamma, c.id));
    if (const Json* q = optional_field(j, "quantum_classes")) {
        array(*q, "/quantum_classes");
        for (size_t i = 0; i < q->size(); ++i) {
            std::string w = "/quantum_classes/" + std::to_string(i);
            f.quantum.emplace_back(text(field((*q)[i], "id", w), w + "/id"),
                                   quantum_from(field((*q)[i], "terms", w), f.gamma, mode, w + "/terms"));
        }
    }
    for (const auto& [id, a] : f.quantum) {
        for (const auto& t : a.terms())
            f.classes.find(t.cls);
        a.degree(f.classes);
    }
    if (const Json* p = optional_field(j, "products")) {
        ProductFixture prod;
        prod.unit = text(field(*p, "unit", "/products"), "/products/unit");
        const Json& table = array(field(*p, "table", "/products"), "/products/table");
        for (size_t i = 0; i < table.size(); ++i) {
            std::string w = "/products/table/" + std::to_string(i);
            prod.table.emplace(std::make_pair(text(field(table[i], "left", w), w + "/left"),
                                              text(field(table[i], "right", w), w + "/right")),
                               quantum_from(field(table[i], "result", w), f.gamma, mode, w + "/result"));
        }
        auto failures = check_product_fixture(prod, f.classes, f.gamma);
        if (!failures.empty()) {
            std::string s;
            for (const auto& x : failures)
                s += x + "; ";
            throw InputError("invariant", "product table: " + s);
        }
        f.products = std::move(prod);
    }
    if (const Json* e = optional_field(j, "epsilons")) {
        for (size_t i = 0; i < array(*e, "/epsilons").size(); ++i) {
            Rational eps = rational_from((*e)[i], mode, "/epsilons/" + std::to_string(i));
            if (eps <= 0)
                throw InputError("invariant", "/epsilons/" + std::to_string(i) + ": epsilon must be positive");
            f.epsilons.push_back(eps);
        }
    }
    return f;
}

}  // namespace

LoadError::LoadError(std::vector<Issue> issues)
    : InputError(issues.empty() ? "input" : issues.front().code, join_issues(issues)), issues_(std::move(issues))
{
}

Workspace load_workspace(const std::string& manifest_path, const Overrides& o)
{
    namespace fs = std::filesystem;
    Workspace ws;
    ws.manifest = manifest_path;
    std::vector<Issue> issues;
    Json m;
    try {
        m = parse_text(read_file(manifest_path), manifest_path);
        if (!m.is_object())
            schema("", "manifest must be an object");
        if (const Json* x = optional_field(m, "mode")) {
            std::string s = text(*x, "/mode");
            if (s != "rational" && s != "float")
                schema("/mode", "expected \"rational\" or \"float\"");
            ws.mode = s == "float" ? Mode::Float : Mode::Rational;
        }
        if (const Json* x = optional_field(m, "floor"))
            ws.floor = ExtReal(rational_from(*x, ws.mode, "/floor"));
        if (const Json* x = optional_field(m, "seed"))
            ws.seed = integer(*x, "/seed");
        if (const Json* x = optional_field(m, "out"))
            ws.out = text(*x, "/out");
        if (const Json* x = optional_field(m, "oracle_cap"))
            ws.oracle_cap = integer(*x, "/oracle_cap");
        if (const Json* r = optional_field(m, "random")) {
            if (const Json* x = optional_field(*r, "instances"))
                ws.random.instances = integer(*x, "/random/instances");
            if (const Json* x = optional_field(*r, "continuity_pairs"))
                ws.random.continuity_pairs = integer(*x, "/random/continuity_pairs");
            if (const Json* x = optional_field(*r, "seidel_shifts"))
                ws.random.seidel_shifts = integer(*x, "/random/seidel_shifts");
            if (const Json* x = optional_field(*r, "balls"))
                ws.random.balls = integer(*x, "/random/balls");
        }
    } catch (const Error& e) {
        throw LoadError({{manifest_path, e.code(), e.what()}});
    }
    if (o.mode)
        ws.mode = *o.mode;
    if (o.floor)
        ws.floor = *o.floor;
    if (o.seed)
        ws.seed = *o.seed;
    if (o.out)
        ws.out = *o.out;
    if (o.oracle_cap)
        ws.oracle_cap = *o.oracle_cap;

    fs::path base = fs::path(manifest_path).parent_path();
    auto load = [&](const char* kind, auto&& body) {
        std::map<std::string, std::string> table;
        try {
            table = name_table(m, kind);
        } catch (const Error& e) {
            issues.push_back({manifest_path, e.code(), e.what()});
            return;
        }
        for (const auto& [name, rel] : table) {
            std::string path = (base / rel).lexically_normal().string();
            try {
                std::string bytes = read_file(path);
                ws.hashes.push_back({name, kind, rel, sha256_hex(bytes)});
                body(name, rel, parse_text(bytes, path));
            } catch (const Error& e) {
                issues.push_back({path, e.code(), e.what()});
            } catch (const nlohmann::json::exception& e) {
                issues.push_back({path, "schema", e.what()});
            }
        }
    };

    load("complexes", [&](const std::string& name, const std::string& rel, const Json& j) {
        ws.complexes.push_back(load_complex(name, rel, j, ws.mode));
    });
    load("morse", [&](const std::string& name, const std::string& rel, const Json& j) {
        ws.morse.push_back(load_morse(name, rel, j, ws.mode));
    });
    auto resolve = [&](const std::string& ref) -> ComplexRef {
        auto at = ref.find('@');
        if (at == std::string::npos)
            return ws.complex(ref).complex;
        const auto& mf = ws.morse_fixture(ref.substr(0, at));
        Rational eps = parse_rational(ref.substr(at + 1));
        return std::make_shared<const FilteredComplex>(build_small_floer(mf.morse, eps, mf.gamma));
    };
    load("chain_maps", [&](const std::string& name, const std::string& rel, const Json& j) {
        ChainMapFixture f{name, rel, {}, {}, {}};
        f.source = text(field(j, "source", ""), "/source");
        f.target = text(field(j, "target", ""), "/target");
        f.map.source = resolve(f.source);
        f.map.target = resolve(f.target);
        if (f.map.source->gamma()->fingerprint() != f.map.target->gamma()->fingerprint())
            throw InputError("gamma-mismatch", "source and target use different Gamma groups");
        f.map.shift_bound = rational_from(field(j, "shift_bound", ""), ws.mode, "/shift_bound");
        const Json& es = array(field(j, "entries", ""), "/entries");
        for (size_t i = 0; i < es.size(); ++i) {
            std::string w = "/entries/" + std::to_string(i);
            std::string from = text(field(es[i], "from", w), w + "/from"), to = text(field(es[i], "to", w), w + "/to");
            auto scalar = scalar_from(field(es[i], "scalar", w), f.map.source->gamma(), Direction::Downward, ws.mode,
                                      w + "/scalar");
            f.map.entries.push_back({from, to, scalar});
        }
        auto cert = certify_chain_map(f.map);
        if (!cert.ok())
            throw InputError("invariant", cert.report.summary());
        ws.chain_maps.push_back(std::move(f));
    });
    load("seidel", [&](const std::string& name, const std::string& rel, const Json& j) {
        SeidelFixture f{name, rel, {}, {}, {}};
        f.complex = text(field(j, "complex", ""), "/complex");
        f.cls = text(field(j, "class", ""), "/class");
        const auto& cf = ws.complex(f.complex);
        const auto& c = *cf.complex;
        bool found = false;
        for (const auto& nc : cf.classes)
            found = found || nc.id == f.cls;
        if (!found)
            throw InputError("reference", "complex '" + f.complex + "' has no class '" + f.cls + "'");
        if (const Json* d = optional_field(j, "deck")) {
            f.shift = deck_shift(c, element_from(*d, *c.gamma(), "/deck"));
        } else {
            const Json& b = field(j, "bijection", "");
            const Json& s = field(j, "cap_shift", "");
            for (const auto& [x, y] : b.items())
                f.shift.bijection[x] = text(y, "/bijection/" + x);
            for (const auto& [x, a] : s.items())
                f.shift.cap_shift[x] = element_from(a, *c.gamma(), "/cap_shift/" + x);
            f.shift.i_omega = rational_from(field(j, "i_omega", ""), ws.mode, "/i_omega");
            f.shift.i_degree = integer(field(j, "i_degree", ""), "/i_degree");
        }
        try {
            seidel_complex(c, f.shift);
        } catch (const StructuralError& e) {
            throw InputError("invariant", e.what());
        }
        ws.seidel.push_back(std::move(f));
    });
    load("functionals", [&](const std::string& name, const std::string& rel, const Json& j) {
        FunctionalFixture f;
        f.name = name;
        f.path = rel;
        f.complex = text(field(j, "complex", ""), "/complex");
        f.on = resolve(f.complex);
        f.mu = functional_from(j, f.on->gamma(), ws.mode, "");
        for (const auto& p : f.mu.pieces)
            if (!f.on->has_orbit(p.orbit))
                throw InputError("reference", "functional names unknown orbit '" + p.orbit + "'");
        if (const Json* e = optional_field(j, "expect")) {
            std::string s = text(*e, "/expect");
            if (s != "continuous" && s != "discontinuous")
                schema("/expect", "expected \"continuous\" or \"discontinuous\"");
            f.expect_continuous = s == "continuous";
        }
        if (const Json* d = optional_field(j, "degree"))
            f.degree = integer(*d, "/degree");
        ws.functionals.push_back(std::move(f));
    });

    if (!issues.empty())
        throw LoadError(std::move(issues));
    return ws;
}

}  // namespace spectra::io
