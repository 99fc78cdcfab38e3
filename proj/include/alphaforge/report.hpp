#pragma once

#include <string>
#include <vector>

#include "alphaforge/alpha.hpp"
#include "alphaforge/census.hpp"

namespace alphaforge::report {

// Minimal JSON writer: field order is emission order and every double is
// serialized with 17 significant digits, so equal inputs give byte-equal
// reports regardless of worker count.
class JsonWriter {
  public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array(const std::string& key);
    JsonWriter& end_array();
    JsonWriter& field(const std::string& key, const std::string& v);
    JsonWriter& field(const std::string& key, const char* v);
    JsonWriter& field(const std::string& key, double v);
    JsonWriter& field(const std::string& key, bool v);
    JsonWriter& field(const std::string& key, i64 v);
    JsonWriter& field(const std::string& key, u64 v);
    JsonWriter& field_raw(const std::string& key, const std::string& raw);
    JsonWriter& element(double v);
    std::string str() const { return out_; }

  private:
    void comma();
    std::string out_;
    bool need_comma_ = false;
};

std::string format_double(double v);  // %.17g
std::string escape(const std::string& s);

inline constexpr const char* kSchema = "alpha-forge/1";

// Shared report builders (the CLI and the determinism tests emit through the
// same code path). `seconds` < 0 omits the timing field.
std::string alpha_report(const std::string& poly, u64 cutoff,
                         const alpha::AlphaEstimate& est, bool rh_tail,
                         const ParallelConfig& cfg, double seconds);

std::string census_report(const std::string& poly,
                          const census::CensusResult& res,
                          const ParallelConfig& cfg, double seconds);

std::string experiment_report(const std::string& poly,
                              const census::Theorem42Report& rep,
                              u64 alpha_cutoff, const ParallelConfig& cfg,
                              double seconds);

}  // namespace alphaforge::report
