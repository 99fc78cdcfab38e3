#include "alphaforge/report.hpp"

#include <cstdio>

namespace alphaforge::report {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

void JsonWriter::comma() {
    if (need_comma_) out_ += ',';
    need_comma_ = false;
}

JsonWriter& JsonWriter::begin_object() {
    comma();
    out_ += '{';
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    out_ += '}';
    need_comma_ = true;
    return *this;
}

JsonWriter& JsonWriter::begin_array(const std::string& key) {
    comma();
    out_ += '"' + escape(key) + "\":[";
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    out_ += ']';
    need_comma_ = true;
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, const std::string& v) {
    comma();
    out_ += '"' + escape(key) + "\":\"" + escape(v) + '"';
    need_comma_ = true;
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, const char* v) {
    return field(key, std::string(v));
}

JsonWriter& JsonWriter::field(const std::string& key, double v) {
    comma();
    out_ += '"' + escape(key) + "\":" + format_double(v);
    need_comma_ = true;
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, bool v) {
    comma();
    out_ += '"' + escape(key) + "\":" + (v ? "true" : "false");
    need_comma_ = true;
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, i64 v) {
    comma();
    out_ += '"' + escape(key) + "\":" + std::to_string(v);
    need_comma_ = true;
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, u64 v) {
    comma();
    out_ += '"' + escape(key) + "\":" + std::to_string(v);
    need_comma_ = true;
    return *this;
}

JsonWriter& JsonWriter::field_raw(const std::string& key, const std::string& raw) {
    comma();
    out_ += '"' + escape(key) + "\":" + raw;
    need_comma_ = true;
    return *this;
}

JsonWriter& JsonWriter::element(double v) {
    comma();
    out_ += format_double(v);
    need_comma_ = true;
    return *this;
}

namespace {
void config_block(JsonWriter& w, const ParallelConfig& cfg) {
    w.field_raw("config", "{\"workers\":" + std::to_string(cfg.resolved_workers()) +
                              ",\"segment_size\":" + std::to_string(cfg.segment_size) + "}");
}
}  // namespace

std::string alpha_report(const std::string& poly, u64 cutoff,
                         const alpha::AlphaEstimate& est, bool rh_tail,
                         const ParallelConfig& cfg, double seconds) {
    JsonWriter w;
    w.begin_object();
    w.field("schema", kSchema);
    w.field("command", "alpha");
    w.field("poly", poly);
    w.field("cutoff", cutoff);
    w.field("partial_sum", est.partial_sum);
    if (rh_tail) {
        w.field("tail_bound", est.tail_bound);
        w.field("interval_lo", est.lo());
        w.field("interval_hi", est.hi());
        w.field("assumes_rh", est.assumes_RH);
        w.field("field_nk", static_cast<i64>(est.field.n_K));
        w.field("field_disc_magnitude", est.field.disc_magnitude.get_str());
        w.field("field_a", est.field.a_K);
        w.field("field_b", est.field.b_K);
        w.field("field_c", est.field.c_K);
        w.field("p0", est.p0);
    }
    config_block(w, cfg);
    if (seconds >= 0.0) w.field("seconds", seconds);
    w.end_object();
    return w.str();
}

std::string census_report(const std::string& poly, const census::CensusResult& res,
                          const ParallelConfig& cfg, double seconds) {
    JsonWriter w;
    w.begin_object();
    w.field("schema", kSchema);
    w.field("command", "census");
    w.field("poly", poly);
    w.field("norm_bound", res.norm_bound);
    w.field("smooth_bound", res.smooth_bound);
    w.field("pairs_total", res.pairs_total);
    w.field("pairs_smooth", res.pairs_smooth);
    w.field("ratio", res.ratio);
    config_block(w, cfg);
    if (seconds >= 0.0) w.field("seconds", seconds);
    w.end_object();
    return w.str();
}

std::string experiment_report(const std::string& poly,
                              const census::Theorem42Report& rep, u64 alpha_cutoff,
                              const ParallelConfig& cfg, double seconds) {
    JsonWriter w;
    w.begin_object();
    w.field("schema", kSchema);
    w.field("command", "experiment-t42");
    w.field("poly", poly);
    w.field("norm_bound", rep.census.norm_bound);
    w.field("smooth_bound", rep.census.smooth_bound);
    w.field("alpha_cutoff", alpha_cutoff);
    w.field("alpha_partial_sum", rep.alpha.partial_sum);
    w.field("alpha_tail_bound", rep.alpha.tail_bound);
    w.field("pairs_total", rep.census.pairs_total);
    w.field("pairs_smooth", rep.census.pairs_smooth);
    w.field("empirical_ratio", rep.empirical_ratio);
    w.field("predicted_saias", rep.predicted_saias);
    if (rep.predicted_exact_sieve) {
        w.field("predicted_exact_sieve", *rep.predicted_exact_sieve);
        w.field("gap_abs_exact", rep.gap_abs_exact);
        w.field("gap_rel_exact", rep.gap_rel_exact);
    }
    w.field("gap_abs_saias", rep.gap_abs_saias);
    w.field("gap_rel_saias", rep.gap_rel_saias);
    config_block(w, cfg);
    if (seconds >= 0.0) w.field("seconds", seconds);
    w.end_object();
    return w.str();
}

}  // namespace alphaforge::report
