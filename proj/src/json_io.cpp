#include "hklat/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace hklat {

json json_int(const Int& v) {
    if (v.fits_slong_p())
        return static_cast<long long>(v.get_si());
    return v.get_str();
}

Int int_from_json(const json& j) {
    if (j.is_number_integer())
        return Int(static_cast<long>(j.get<long long>()));
    if (j.is_string())
        return Int(j.get<std::string>());
    throw std::invalid_argument("expected an integer (number or decimal string)");
}

json lattice_to_json(const Lattice& L) {
    json gram = json::array();
    for (const auto& e : L.entries())
        gram.push_back(json_int(e));
    return json{{"rank", L.rank()}, {"gram", gram}};
}

Lattice lattice_from_json(const json& j) {
    if (!j.contains("rank") || !j.contains("gram"))
        throw std::invalid_argument("lattice JSON needs {rank, gram}");
    const int rank = j.at("rank").get<int>();
    std::vector<Int> entries;
    for (const auto& e : j.at("gram"))
        entries.push_back(int_from_json(e));
    return Lattice::from_gram(rank, std::move(entries));
}

Lattice load_lattice_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open lattice file: " + path);
    json j;
    in >> j;
    return lattice_from_json(j);
}

json factorization_to_json(const Factorization& f) {
    json factors = json::array();
    for (const auto& pp : f.factors)
        factors.push_back(json::array({json_int(pp.prime), pp.exponent}));
    return json{{"value", json_int(f.value)}, {"factors", factors}};
}

json verdict_to_json(const ConditionVerdict& v) {
    json hilb{{"satisfied", v.hilb.satisfied}, {"a_max", json_int(v.hilb.a_max)}};
    if (v.hilb.witness) {
        hilb["k"] = json_int(v.hilb.witness->k);
        hilb["a"] = json_int(v.hilb.witness->a);
    } else {
        hilb["status"] = "unsatisfied-within-bound";
    }
    json out{{"schema", 1},     {"d", json_int(v.d)}, {"star", v.star},     {"hilb", hilb},
             {"moduli", v.moduli}, {"twisted", v.twisted}, {"dagger", v.dagger}};
    json evidence = json::object();
    if (v.half)
        evidence["half"] = factorization_to_json(*v.half);
    out["evidence"] = evidence;
    if (!v.note.empty())
        out["note"] = v.note;
    return out;
}

json obstruction_to_json(const ObstructionCertificate& c) {
    json lambdas = json::array();
    for (const auto& l : c.lambdas)
        lambdas.push_back(json_int(l));
    json table = json::array();
    for (const auto& row : c.table)
        table.push_back(json::array({row.y, row.z, row.value}));
    return json{{"schema", 1},
                {"d1", json_int(c.d1)},
                {"d2", json_int(c.d2)},
                {"lambdas", lambdas},
                {"p", json_int(c.p)},
                {"content", json_int(c.content)},
                {"p_valuation", c.p_valuation},
                {"q", {{"a", json_int(c.q.a)}, {"b", json_int(c.q.b)}, {"c", json_int(c.q.c)}}},
                {"table", table},
                {"conclusion", c.conclusion}};
}

static json vec_to_json(const Vec& v) {
    json out = json::array();
    for (const auto& c : v)
        out.push_back(json_int(c));
    return out;
}

json u_certificate_to_json(const UEmbeddingCertificate& c) {
    return json{{"D", vec_to_json(c.D)},
                {"k", json_int(c.k)},
                {"F", vec_to_json(c.F)},
                {"m", json_int(c.m)},
                {"B", vec_to_json(c.B)},
                {"gram2", json::array({json::array({json_int(c.gram2[0]), json_int(c.gram2[1])}),
                                       json::array({json_int(c.gram2[2]), json_int(c.gram2[3])})})}};
}

json moduli_verdict_to_json(const ModuliVerdict& v) {
    json out{{"schema", 1},
             {"kind", v.kind == ModuliVerdictKind::Certified ? "certified" : "inconclusive"},
             {"rho_at_least_4", v.rho_at_least_4},
             {"ambient_definite", v.ambient_definite},
             {"final_radius", v.final_radius},
             {"note", v.note}};
    if (v.certificate)
        out["certificate"] = u_certificate_to_json(*v.certificate);
    return out;
}

}  // namespace hklat
