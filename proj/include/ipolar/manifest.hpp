#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ipolar/wef.hpp"

namespace ipolar {

inline constexpr const char* kToolVersion = "0.1.0";

/// Provenance header written at the top of every output file.
struct RunManifest {
    std::string command;
    std::string config_digest;  // FNV-1a 64 over the canonical inputs
    std::uint64_t seed = 0;
    std::string version = kToolVersion;
    std::string timestamp;  // ISO-8601 UTC

    static RunManifest make(const std::string& command, const std::string& config_text,
                            std::uint64_t seed);

    /// '# key: value' lines.
    std::string header_block() const;
};

std::string fnv1a_digest(const std::string& data);

/// WEF CSV: manifest + metadata comments, then 'd,coefficient' rows.
/// Rational coefficients serialize exactly as 'p/q'; floats with full
/// precision. Readers accept both forms.
std::string wef_to_csv(const WeightPoly<Rational>& p, const RunManifest& mf,
                       const std::map<std::string, std::string>& meta);
std::string wef_to_csv(const WeightPoly<double>& p, const RunManifest& mf,
                       const std::map<std::string, std::string>& meta);
std::string iowef_to_csv(const IoWeightPoly<Rational>& p, const RunManifest& mf,
                         const std::map<std::string, std::string>& meta);
std::string iowef_to_csv(const IoWeightPoly<double>& p, const RunManifest& mf,
                         const std::map<std::string, std::string>& meta);

/// Parses a WEF CSV (comments skipped) into float coefficients.
WeightPoly<double> wef_from_csv(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace ipolar
