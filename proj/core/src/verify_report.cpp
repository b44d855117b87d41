#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "qjackson/verify.hpp"

namespace qjackson {

const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::NotConverged: return "not_converged";
        case CheckStatus::Error: return "error";
    }
    return "?";
}

double relative_deviation(Complex lhs, Complex rhs, double scale) {
    const double diff = std::abs(lhs - rhs);
    const double denom = std::max(std::abs(rhs), scale);
    if (denom > 0.0) return diff / denom;
    if (diff == 0.0) return 0.0;
    return diff / std::abs(lhs);
}

void finish_report(CheckReport& r, double scale) {
    r.rel_dev = relative_deviation(r.lhs, r.rhs, scale);
    r.passed = r.rel_dev <= r.tol;  // NaN fails
    r.status = r.passed ? CheckStatus::Pass : CheckStatus::Fail;
}

namespace {

std::string num(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_num(double v) {
    if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    return num(v);
}

std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    return out + "\"";
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string reports_to_json(const std::vector<CheckReport>& reports, bool timing) {
    std::ostringstream o;
    o << "[";
    for (std::size_t k = 0; k < reports.size(); ++k) {
        const auto& r = reports[k];
        o << (k ? ",\n " : "\n ") << "{";
        o << "\"check_id\": " << json_string(r.check_id);
        o << ", \"paper_anchor\": " << json_string(r.paper_anchor);
        o << ", \"lhs\": [" << num(r.lhs.real()) << ", " << num(r.lhs.imag()) << "]";
        o << ", \"rhs\": [" << num(r.rhs.real()) << ", " << num(r.rhs.imag()) << "]";
        o << ", \"rel_dev\": " << num(r.rel_dev);
        o << ", \"tol\": " << num(r.tol);
        o << ", \"passed\": " << (r.passed ? "true" : "false");
        o << ", \"seed\": " << r.seed;
        o << ", \"params_echo\": " << json_string(r.params_echo);
        o << ", \"terms\": " << r.terms;
        o << ", \"elapsed_ms\": " << (timing ? r.elapsed_ms : 0);
        o << ", \"trial\": " << r.trial;
        o << ", \"status\": " << json_string(status_name(r.status));
        o << "}";
    }
    o << (reports.empty() ? "]\n" : "\n]\n");
    return o.str();
}

std::string reports_to_csv(const std::vector<CheckReport>& reports, bool timing) {
    std::ostringstream o;
    o << "check_id,paper_anchor,lhs_re,lhs_im,rhs_re,rhs_im,rel_dev,tol,passed,seed,params_echo,terms,elapsed_ms,"
         "trial,status\n";
    for (const auto& r : reports) {
        o << csv_field(r.check_id) << ',' << csv_field(r.paper_anchor) << ',' << csv_num(r.lhs.real()) << ','
          << csv_num(r.lhs.imag()) << ',' << csv_num(r.rhs.real()) << ',' << csv_num(r.rhs.imag()) << ','
          << csv_num(r.rel_dev) << ',' << csv_num(r.tol) << ',' << (r.passed ? "true" : "false") << ',' << r.seed
          << ',' << csv_field(r.params_echo) << ',' << r.terms << ',' << (timing ? r.elapsed_ms : 0) << ','
          << r.trial << ',' << status_name(r.status) << '\n';
    }
    return o.str();
}

std::string reports_to_text(const std::vector<CheckReport>& reports) {
    std::ostringstream o;
    for (const auto& r : reports) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.3e", r.rel_dev);
        std::string verdict = r.passed ? "PASS" : "FAIL";
        if (r.status == CheckStatus::NotConverged) verdict += " (not converged)";
        if (r.status == CheckStatus::Error) verdict += " (error)";
        o << r.check_id << "#" << r.trial << "  " << buf << "  " << verdict << '\n';
    }
    return o.str();
}

}  // namespace qjackson
