#include "bislat/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace bislat {

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::undetermined: return "undetermined";
    }
    return "?";
}

void record_violation(LawReport& rep, double violation, LawWitness witness) {
    if (!rep.witness || violation > rep.max_violation) {
        rep.witness = std::move(witness);
    }
    if (violation > rep.max_violation) rep.max_violation = violation;
}

void finish_report(LawReport& rep) {
    if (rep.max_violation > rep.tol) {
        rep.verdict = Verdict::fail;
    } else if (rep.undetermined > 0) {
        rep.verdict = Verdict::undetermined;
    } else {
        rep.verdict = Verdict::pass;
    }
}

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string csv(const std::vector<double>& xs) {
    if (xs.empty()) return "-";
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ",";
        s += format_double(xs[i]);
    }
    return s;
}

std::string join_exprs(const std::vector<std::string>& es) {
    if (es.empty()) return "-";
    std::string s;
    for (std::size_t i = 0; i < es.size(); ++i) {
        if (i) s += "|";
        s += es[i];
    }
    return s;
}

}  // namespace

std::string reports_to_table(const std::vector<LawReport>& reports) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof(line), "%-16s %10s %7s %14s %10s %-12s\n", "law", "instances",
                  "undet", "max_violation", "tol", "verdict");
    out << line;
    out << std::string(74, '-') << "\n";
    for (const auto& r : reports) {
        std::snprintf(line, sizeof(line), "%-16s %10d %7d %14.3e %10.1e %-12s\n", r.law.c_str(),
                      r.instances, r.undetermined, r.max_violation, r.tol,
                      verdict_name(r.verdict).c_str());
        out << line;
        if (r.verdict != Verdict::pass && r.witness) {
            out << "    worst: " << join_exprs(r.witness->exprs);
            if (!r.witness->masses.empty()) out << "  masses=" << csv(r.witness->masses);
            if (!r.witness->vector.empty()) out << "  x=" << csv(r.witness->vector);
            if (!r.witness->detail.empty()) out << "  (" << r.witness->detail << ")";
            out << "\n";
        }
        if (!r.note.empty()) out << "    note: " << r.note << "\n";
    }
    return out.str();
}

std::string reports_to_records(const std::vector<LawReport>& reports) {
    std::ostringstream out;
    for (const auto& r : reports) {
        out << "law=" << r.law;
        out << " instances=" << r.instances;
        out << " undetermined=" << r.undetermined;
        out << " max_violation=" << format_double(r.max_violation);
        out << " tol=" << format_double(r.tol);
        out << " verdict=" << verdict_name(r.verdict);
        out << " seed=" << r.seed;
        out << " witness_exprs=\"" << (r.witness ? join_exprs(r.witness->exprs) : "-") << "\"";
        out << " witness_masses=" << (r.witness ? csv(r.witness->masses) : "-");
        out << " witness_x=" << (r.witness ? csv(r.witness->vector) : "-");
        out << " note=\"" << (r.note.empty() ? "-" : r.note) << "\"";
        out << "\n";
    }
    return out.str();
}

int exit_code_for(const std::vector<LawReport>& reports) {
    bool undet = false;
    for (const auto& r : reports) {
        if (r.verdict == Verdict::fail) return 1;
        if (r.verdict == Verdict::undetermined) undet = true;
    }
    return undet ? 2 : 0;
}

}  // namespace bislat
