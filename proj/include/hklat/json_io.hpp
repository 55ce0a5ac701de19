#ifndef HKLAT_JSON_IO_HPP
#define HKLAT_JSON_IO_HPP

#include <string>

#include "json.hpp"

#include "hklat/conditions.hpp"
#include "hklat/divisor.hpp"
#include "hklat/embedding.hpp"
#include "hklat/lattice.hpp"

namespace hklat {

using json = nlohmann::json;

/// Exact integers as JSON numbers when they fit in 64 bits, decimal strings
/// otherwise.
json json_int(const Int& v);
Int int_from_json(const json& j);

/// {"rank": r, "gram": [row-major integers]}: the CLI lattice file format.
json lattice_to_json(const Lattice& L);
Lattice lattice_from_json(const json& j);
Lattice load_lattice_file(const std::string& path);

json factorization_to_json(const Factorization& f);
json verdict_to_json(const ConditionVerdict& v);
json obstruction_to_json(const ObstructionCertificate& c);
json u_certificate_to_json(const UEmbeddingCertificate& c);
json moduli_verdict_to_json(const ModuliVerdict& v);

}  // namespace hklat

#endif
