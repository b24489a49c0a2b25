#pragma once

// JSON documents and the command dispatcher behind the `hkit` executable.
// Complex entries are encoded as two-element arrays [re, im]; a bare number
// is accepted on input as a real entry.

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "hkit/measures.hpp"

namespace hkit::cli {

using nlohmann::json;

enum ExitCode : int {
    kOk = 0,
    kVerificationFailed = 1,
    kInputError = 2,
    kPreconditionFailed = 3,
};

json matrix_to_json(const Matrix& A);
/// Throws std::invalid_argument on ragged rows or malformed entries.
Matrix matrix_from_json(const json& j);

json sequence_to_json(const MomentSequence& ms);
/// Reads {alpha, beta, q, matrices[, metadata]}; validates shapes and finiteness.
MomentSequence sequence_from_json(const json& j);

json measure_to_json(const MolecularMeasure& mu);
/// Reads {alpha, beta, q, atoms: [{node, weight}]}.
MolecularMeasure measure_from_json(const json& j);

json report_to_json(const ClassReport& rep);
json params_to_json(const IntervalParams& p);
json checks_to_json(const std::vector<Check>& checks);

/// Names accepted by `verify --suite`.
const std::vector<std::string>& suite_names();

/// Runs one suite on ms. Suites that need Fgg input throw precondition_error.
std::vector<Check> run_suite(const std::string& suite, const MomentSequence& ms, const Tolerance& tol);

/// Full command line without the program name, e.g. {"classify", "-"}.
/// Reads "-" from `in`, writes the JSON result to `out` and diagnostics
/// to `err`, and returns the process exit code.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace hkit::cli
