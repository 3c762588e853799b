#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ferro/profile.hpp"

namespace ferro {

/// Shortest decimal string that parses back to exactly `x` ('.' separator,
/// no locale).
std::string format_double(double x);

/// Locale-independent parse of a whole token; throws std::invalid_argument.
double parse_double(std::string_view s);

struct ProfileFile {
  Profile profile;
  std::optional<double> kappa;
};

/// CSV layout:
///   # <extra comment lines, e.g. config hash>
///   # m=<m> n=<n_end> kappa=<kappa or "unknown">
///   theta,h
///   <theta_i>,<h_i>      (n+1 rows)
void write_profile_csv(std::ostream& os, const Profile& p,
                       std::optional<double> kappa,
                       const std::vector<std::string>& comments = {});
void write_profile_csv(const std::filesystem::path& path, const Profile& p,
                       std::optional<double> kappa,
                       const std::vector<std::string>& comments = {});

/// Reads a profile CSV. The row count fixes the grid (n = rows - 1); the
/// theta column must match that grid's nodes. Throws std::runtime_error with
/// the line number on malformed input.
ProfileFile read_profile_csv(std::istream& is);
ProfileFile read_profile_csv(const std::filesystem::path& path);

}  // namespace ferro
