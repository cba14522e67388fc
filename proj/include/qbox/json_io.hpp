#pragma once

/*
 * JSON (de)serialization for every type the command-line tool exchanges.
 *
 * Formats:
 *
 *   probability table   {"depth": L, "P_a": {"0": p, ...}, "P_b": {...}}
 *   finite-dim model    {"dim": d, "A": [[re, im] x d^2 row-major],
 *                        "B": [...], "rho0": [...]}
 *   atomic state        {"atoms": [{"w": ., "t": ., "bloch": [bx, by, bz]}]}
 *   integer moments     {"M1": [[.],[.,.],...], "Mx": ..., "Mz": ...}
 *   half-odd moments    {"M1p": [[.],[.,.],...], "Mxp": ..., "Mzp": ...}
 *
 * Moment tables are ragged arrays indexed [n][s] with 0 <= s <= n.  Readers
 * ignore unknown keys (e.g. an informational "depth" on moment files), so
 * files can carry annotations without breaking consumers.
 */

#include <string>

#include "json.hpp"
#include "qbox/certifier.hpp"
#include "qbox/moments.hpp"
#include "qbox/qmodel.hpp"
#include "qbox/seqcore.hpp"

namespace qbox {

nlohmann::json table_to_json(const ProbabilityTable& t);
ProbabilityTable table_from_json(const nlohmann::json& j);

nlohmann::json model_to_json(const FiniteDimModel& m);
FiniteDimModel model_from_json(const nlohmann::json& j);

nlohmann::json atomic_to_json(const AtomicState& st);
AtomicState atomic_from_json(const nlohmann::json& j);

nlohmann::json int_moments_to_json(const IntMomentTable& m);
IntMomentTable int_moments_from_json(const nlohmann::json& j);

nlohmann::json half_moments_to_json(const HalfMomentTable& m);
HalfMomentTable half_moments_from_json(const nlohmann::json& j);

nlohmann::json verdict_to_json(const Verdict& v);

// Reads a whole JSON document from a file, or from stdin when path == "-".
// Throws std::runtime_error on I/O failure, nlohmann::json::exception on
// malformed JSON.
nlohmann::json load_json(const std::string& path);

// Writes a document (2-space indent, sorted keys) to a file, or to stdout
// when path == "-".
void save_json(const nlohmann::json& j, const std::string& path);

}  // namespace qbox
