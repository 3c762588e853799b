#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "ferro/flow.hpp"
#include "ferro/saddle.hpp"
#include "ferro/spectrum.hpp"
#include "ferro/stationary.hpp"

namespace ferro::cli {

using ojson = nlohmann::ordered_json;

std::uint64_t fnv1a(std::string_view bytes);

/// 16 hex digits of the FNV-1a hash of the config's compact dump.
std::string config_hash(const ojson& config);

/// <base>/<command>-<hash>, created if missing.
std::filesystem::path run_directory(const std::filesystem::path& base,
                                    const std::string& command, const std::string& hash);

/// --out, else $FERRO_OUT_DIR, else ./ferro_runs.
std::filesystem::path output_base(const std::string& flag_value);

/// JSON numbers: NaN and infinities become null.
ojson number(double x);

/// Writes {"config_hash": ..., <body fields>} pretty-printed.
void write_json(const std::filesystem::path& path, const std::string& hash, const ojson& body);

/// Header line "# config_hash=<hash>", then the column line and rows.
void write_csv(const std::filesystem::path& path, const std::string& hash,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<std::string>>& rows);

void write_profile(const std::filesystem::path& path, const std::string& hash,
                   const Profile& p, std::optional<double> kappa);

void write_trace(const std::filesystem::path& path, const std::string& hash,
                 const FlowResult& r);

ojson spectrum_json(const SpectrumResult& s);
ojson report_json(const SaddleReport& r, int n_used);
ojson wedge_json(const WedgeVerdict& v);

/// kappa value as used in file names: shortest round-trip decimal.
std::string kappa_tag(double kappa);

}  // namespace ferro::cli
