#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace finstack {

/// One violated axiom with a witness tuple (indices into the offending tables).
struct Violation {
    std::string rule;
    std::vector<long long> witness;
    std::string detail;
};

/// Result of a structural validation: empty list of violations means valid.
struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }

    void add(std::string rule, std::vector<long long> witness, std::string detail = "") {
        violations.push_back({std::move(rule), std::move(witness), std::move(detail)});
    }

    std::string to_string() const {
        if (ok()) return "valid";
        std::ostringstream os;
        for (const auto& v : violations) {
            os << v.rule << " violated at (";
            for (size_t i = 0; i < v.witness.size(); ++i) {
                if (i) os << ",";
                os << v.witness[i];
            }
            os << ")";
            if (!v.detail.empty()) os << ": " << v.detail;
            os << "\n";
        }
        return os.str();
    }
};

/// Thrown when a constructor receives data failing its preconditions.
class validation_error : public std::runtime_error {
  public:
    explicit validation_error(ValidationReport rep)
        : std::runtime_error(rep.to_string()), report(std::move(rep)) {}
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {
        report.add("error", {}, msg);
    }
    ValidationReport report;
};

inline void require_valid(const ValidationReport& rep) {
    if (!rep.ok()) throw validation_error(rep);
}

} // namespace finstack
