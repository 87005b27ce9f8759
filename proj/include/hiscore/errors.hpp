#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hiscore {

enum class errc {
    empty_input,
    multiple_roots,
    cycle_detected,
    duplicate_child,
    negative_weight,
    path_sum_violation,
    degenerate_tree,
    unknown_node,
    root_as_label,
    empty_matrix,
    unknown_model,
    parse_error,
    unknown_label,
    detection_pair_unsupported,
    invalid_argument,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

// Structural violations of the scoring-tree contract. Carries one diagnostic
// line per violation so a validator can report all of them at once.
class ValidationError : public Error {
public:
    ValidationError(errc code, const std::string& what, std::vector<std::string> diagnostics)
        : Error(code, what), diagnostics_(std::move(diagnostics)) {}
    const std::vector<std::string>& diagnostics() const { return diagnostics_; }

private:
    std::vector<std::string> diagnostics_;
};

// Bad input data: malformed files, unknown labels, invalid queries.
class DataError : public Error {
public:
    using Error::Error;
};

}  // namespace hiscore
