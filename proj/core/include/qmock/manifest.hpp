#ifndef QMOCK_MANIFEST_HPP
#define QMOCK_MANIFEST_HPP

#include <optional>
#include <string>
#include <vector>

#include "qmock/dsl.hpp"
#include "qmock/prover.hpp"

namespace qmock {

// One identity of the corpus, keyed by its printed label.
struct IdentityRecord {
    std::string label;
    std::string lhs;
    std::string rhs;
    enum class Mode { series, prover, residue_series, skip } mode = Mode::series;
    std::optional<long> level;           // prover mode
    std::optional<long> listed_minus_B;  // prover mode, printed value
    std::optional<long> listed_m;        // prover mode, printed verification bound
    std::vector<std::pair<long, long>> residues;    // residue_series: (modulus, residue)
    std::vector<std::pair<long, long>> progression; // series: nested coefficient extraction
    long series_order = 120;
    enum class Expect { proved, known_discrepancy, data_mismatch } expect = Expect::proved;
    std::string note;
};

const char* to_string(IdentityRecord::Mode m);

struct RunReport {
    std::string label;
    bool ok = false;
    std::string status; // verified | proved | failed | data_mismatch | skipped | known_discrepancy
    long first_failure = -1;
    std::optional<long> computed_minus_B;
    std::optional<long> required_order;
    std::optional<long> verified_order;
    std::string detail;
    std::optional<ProofCertificate> certificate;

    std::string to_json() const; // {"label","status","first_failure"?}
};

std::vector<IdentityRecord> load_manifest(const std::string& path);

// Dispatches on the record's mode. Prover records are normalized by their
// first term (the convention under which the tabulated -B values are
// reproduced), proved, checked against the listed data, and double-verified
// at series level.
RunReport run_record(const IdentityRecord& rec);

// Parses "lhs - rhs" into prover input.
std::vector<std::pair<Rational, ProductForm>> record_monomials(const IdentityRecord& rec);

} // namespace qmock

#endif
