#include "qes/serialize.hpp"

namespace qes {

namespace {

using nlohmann::json;

constexpr const char* kSchema = "qes/1";

void require_schema(const json& j) {
    if (!j.is_object() || !j.contains("schema") || j.at("schema") != kSchema)
        throw InvalidInput("document is missing schema tag \"qes/1\"");
}

const json& field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name))
        throw InvalidInput(std::string("missing field \"") + name + "\"");
    return j.at(name);
}

double number(const json& j, const char* what) {
    if (!j.is_number()) throw InvalidInput(std::string(what) + " must be a number");
    return j.get<double>();
}

}  // namespace

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw InvalidInput("complex value must be a two-element array [re, im]");
    return {number(j[0], "complex part"), number(j[1], "complex part")};
}

json poly_to_json(const ComplexPoly& p) {
    json arr = json::array();
    for (const Complex& c : p.coeffs()) arr.push_back(complex_to_json(c));
    return arr;
}

ComplexPoly poly_from_json(const json& j) {
    if (!j.is_array()) throw InvalidInput("polynomial must be an array of [re, im] pairs");
    std::vector<Complex> c;
    c.reserve(j.size());
    for (const auto& e : j) c.push_back(complex_from_json(e));
    // Raw construction: file coefficients are taken verbatim, trusting the
    // writer's canonical form; consistency is the verifier's job.
    return poly_from_raw(std::move(c));
}

json solution_to_json(const QESSolution& sol) {
    json j;
    j["schema"] = kSchema;
    j["case"] = sol.case_tag;
    j["params"] = {{"b1", complex_to_json(sol.params.b1)},
                   {"b2", complex_to_json(sol.params.b2)},
                   {"b3", complex_to_json(sol.params.b3)}};
    json c = json::array();
    for (const Complex& ci : sol.potential.c) c.push_back(complex_to_json(ci));
    j["potential"] = {{"c", std::move(c)}};
    json pairs = json::array();
    for (const auto& ep : sol.eigenpairs)
        pairs.push_back({{"E", complex_to_json(ep.energy)},
                         {"f", poly_to_json(ep.state.f())},
                         {"g", poly_to_json(ep.state.g())}});
    j["eigenpairs"] = std::move(pairs);
    json parities = json::array();
    for (const auto& par : sol.symmetry.state_parity)
        parities.push_back(par ? json(*par) : json(nullptr));
    j["symmetry"] = {{"potential_pt", sol.symmetry.potential_pt},
                     {"parities", std::move(parities)},
                     {"broken", sol.symmetry.explicitly_broken}};
    j["degenerate_root"] = sol.degenerate_root;
    return j;
}

QESSolution solution_from_json(const json& j) {
    require_schema(j);
    QESSolution sol;
    const json& jcase = field(j, "case");
    if (!jcase.is_string()) throw InvalidInput("\"case\" must be a string");
    sol.case_tag = jcase.get<std::string>();

    const json& jp = field(j, "params");
    sol.params = AnsatzParams::validated(complex_from_json(field(jp, "b1")),
                                         complex_from_json(field(jp, "b2")),
                                         complex_from_json(field(jp, "b3")));

    const json& jc = field(field(j, "potential"), "c");
    if (!jc.is_array() || jc.size() != 6)
        throw InvalidInput("potential must list exactly six coefficients");
    for (size_t i = 0; i < 6; ++i) sol.potential.c[i] = complex_from_json(jc[i]);

    const json& jpairs = field(j, "eigenpairs");
    if (!jpairs.is_array() || jpairs.empty())
        throw InvalidInput("solution must carry at least one eigenpair");
    for (const auto& je : jpairs)
        sol.eigenpairs.push_back({complex_from_json(field(je, "E")),
                                  PolyExpState(poly_from_json(field(je, "f")),
                                               poly_from_json(field(je, "g")))});

    const json& js = field(j, "symmetry");
    sol.symmetry.potential_pt = field(js, "potential_pt").get<bool>();
    sol.symmetry.explicitly_broken = field(js, "broken").get<bool>();
    for (const auto& par : field(js, "parities")) {
        if (par.is_null())
            sol.symmetry.state_parity.push_back(std::nullopt);
        else
            sol.symmetry.state_parity.push_back(par.get<int>());
    }
    if (sol.symmetry.state_parity.size() != sol.eigenpairs.size())
        throw InvalidInput("parity list length must match the eigenpair count");

    if (j.contains("degenerate_root")) sol.degenerate_root = j.at("degenerate_root").get<bool>();
    return sol;
}

json rational_to_json(const RationalPotential& u) {
    json j;
    j["schema"] = kSchema;
    j["poly"] = poly_to_json(u.poly);
    json poles = json::array();
    for (const auto& p : u.poles)
        poles.push_back({{"location", complex_to_json(p.location)},
                         {"strength", complex_to_json(p.strength)},
                         {"order", p.order}});
    j["poles"] = std::move(poles);
    return j;
}

RationalPotential rational_from_json(const json& j) {
    require_schema(j);
    RationalPotential u;
    u.poly = poly_from_json(field(j, "poly"));
    for (const auto& jp : field(j, "poles")) {
        PoleTerm t;
        t.location = complex_from_json(field(jp, "location"));
        t.strength = complex_from_json(field(jp, "strength"));
        t.order = field(jp, "order").get<int>();
        if (t.order < 1) throw InvalidInput("pole order must be >= 1");
        u.poles.push_back(t);
    }
    return u;
}

json scatter_to_json(const ScatterResult& r) {
    json j;
    j["k"] = r.k;
    j["R"] = complex_to_json(r.reflection);
    j["T"] = complex_to_json(r.transmission);
    j["oracle_error"] = r.oracle_error ? json(*r.oracle_error) : json(nullptr);
    return j;
}

json report_to_json(const VerificationReport& rep) {
    json j;
    j["schema"] = kSchema;
    j["instance"] = rep.instance;
    j["residual_max"] = rep.residual_max;
    json shots = json::array();
    for (const auto& s : rep.shooting)
        shots.push_back({{"E", complex_to_json(s.energy)},
                         {"mismatch", s.mismatch},
                         {"deviation", s.deviation}});
    j["shooting"] = std::move(shots);
    if (rep.grid) {
        json eigs = json::array();
        for (const Complex& e : rep.grid->eigenvalues) eigs.push_back(complex_to_json(e));
        j["grid"] = {{"eigs", std::move(eigs)},
                     {"richardson", rep.grid->richardson},
                     {"deviation", rep.grid->deviation}};
    }
    json sc = json::array();
    for (const auto& r : rep.scatter) sc.push_back(scatter_to_json(r));
    j["scatter"] = std::move(sc);
    j["passed"] = rep.passed;
    return j;
}

}  // namespace qes
