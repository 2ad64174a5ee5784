#pragma once

// JSON documents for the command verbs ("schema":"ttd/1"). Every document
// carries "status": "ok", "check-failed" or "error".

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "ttd/descent.hpp"
#include "ttd/moduli.hpp"

namespace ttd::report {

using json = nlohmann::ordered_json;

json build(const ModuliPoint<QQ>& p);
json isogeny(const ModuliPoint<QQ>& p);
json verify(const ModuliPoint<QQ>& p, std::optional<ModuliMap> map);
json count(const ModuliPoint<QQ>& p, std::uint64_t prime, bool tilde);
json selmer(const ModuliPoint<QQ>& p, Direction dir, std::uint64_t seed);
json run_all(const ModuliPoint<QQ>& p, std::uint64_t seed, std::optional<ModuliMap> map = std::nullopt);
json certify_identities(std::uint64_t prime);

json error_doc(const std::string& verb, const Error& e, const ModuliPoint<QQ>* p = nullptr);

}  // namespace ttd::report
