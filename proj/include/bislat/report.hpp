#ifndef BISLAT_REPORT_HPP
#define BISLAT_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bislat {

enum class Verdict { pass, fail, undetermined };

std::string verdict_name(Verdict v);

/// Worst-case instance of a law check: which spaces, on which masses, at
/// which vector, plus a free-form detail line.
struct LawWitness {
    std::vector<std::string> exprs;
    std::vector<double> masses;
    std::vector<double> vector;
    std::string detail;
};

struct LawReport {
    std::string law;
    int instances = 0;
    int undetermined = 0;
    double max_violation = 0.0;
    double tol = 0.0;
    Verdict verdict = Verdict::pass;
    std::optional<LawWitness> witness;
    std::uint64_t seed = 0;
    std::string note;
};

/// Record a candidate violation; keeps the worst one as the witness.
void record_violation(LawReport& rep, double violation, LawWitness witness);

/// Finalize the verdict from max_violation vs tol (undetermined instances do
/// not fail a law, they downgrade a pass).
void finish_report(LawReport& rep);

std::string format_double(double v);  // shortest round-trip decimal

/// Human-readable aligned table, one row per law.
std::string reports_to_table(const std::vector<LawReport>& reports);

/// Machine-readable records: one `key=value` line per law, stable field order,
/// round-trip number formatting. Identical inputs produce identical bytes.
std::string reports_to_records(const std::vector<LawReport>& reports);

/// 0 = all pass, 1 = some law failed, 2 = pass with undetermined instances.
int exit_code_for(const std::vector<LawReport>& reports);

}  // namespace bislat

#endif
