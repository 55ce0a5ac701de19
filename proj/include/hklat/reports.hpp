#ifndef HKLAT_REPORTS_HPP
#define HKLAT_REPORTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "hklat/divisor.hpp"
#include "hklat/json_io.hpp"

namespace hklat {

/// One row of a label table: the enumerated witness plus condition flags,
/// recomputed fresh from the induced d (never cached across rows).
struct AnnotatedLabel {
    Int d1, d2;
    std::optional<Int> d3;
    std::vector<Int> lambdas;  // one value at rank 3, three at rank 4
    Int y, z;
    std::optional<Int> w;
    Int d;
    bool star = false;
    bool moduli = false;
    bool twisted = false;
    bool dagger = false;
    bool hilb_satisfied = false;
    Int hilb_a_max;
};

std::vector<AnnotatedLabel> annotate_labels_rank3(const Int& d1, const Int& d2, long bound,
                                                  const Int& a_max = 100);
std::vector<AnnotatedLabel> annotate_labels_rank4(const Int& d1, const Int& d2, const Int& d3,
                                                  long bound, const Int& a_max = 100);

/// CSV with fixed columns d1,d2[,d3],lambda,y,z[,w],d,star,twisted,dagger.
/// Rank-4 lambda triples are emitted as "l12;l13;l23" in the single lambda
/// column.
std::string labels_to_csv(const std::vector<AnnotatedLabel>& rows);
json labels_to_json(const std::vector<AnnotatedLabel>& rows);

struct ScanOptions {
    long d_lo = 8;
    long d_hi = 30;
    long bound = 50;
    std::string out_path;  // empty: no file output
    unsigned threads = 0;  // 0: hardware concurrency
};

/// Summary of one (d1,d2) cell of the grid.
struct ScanCell {
    Int d1, d2;
    unsigned long labels = 0;       // labels within the bound
    bool all_fail_twisted = false;  // every label fails the twisted condition
    bool certificate_found = false;
    Int certificate_prime = 0;  // 0 when no certificate
};

/// Evaluates every star-satisfying cell d_lo <= d1 <= d2 <= d_hi. Cells run
/// concurrently; rows are written through a single writer in cell-key order.
/// When out_path exists, rows already present are kept and skipped (resume).
/// The certificate column is cross-validated against the per-label column on
/// every computed row.
std::vector<ScanCell> run_scan(const ScanOptions& opt);

std::string scan_csv_header();
std::string scan_csv_row(const ScanCell& c);

struct FixtureLine {
    std::string status;  // PASS, FLAG or FAIL
    std::string name;
    std::string detail;
};

struct ExamplesReport {
    std::vector<FixtureLine> lines;
    std::string text() const;
    bool ok = false;  // text matches the golden transcript and nothing FAILed
};

/// Reproduces every named fixture and compares the transcript against the
/// committed golden copy (data/examples.golden, embedded at build time; a
/// path can override it).
ExamplesReport run_examples(const std::string& golden_override_path = "");
const std::string& examples_golden();

}  // namespace hklat

#endif
