#include "run_io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "ferro/profile_io.hpp"

namespace ferro::cli {

namespace fs = std::filesystem;

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash(const ojson& config) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = fnv1a(config.dump());
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

fs::path run_directory(const fs::path& base, const std::string& command,
                       const std::string& hash) {
  fs::path dir = base / (command + "-" + hash);
  fs::create_directories(dir);
  return dir;
}

fs::path output_base(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("FERRO_OUT_DIR"); env && *env) return env;
  return "ferro_runs";
}

ojson number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

namespace {

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  return os;
}

std::string num(double x) { return format_double(x); }

}  // namespace

void write_json(const fs::path& path, const std::string& hash, const ojson& body) {
  ojson doc;
  doc["config_hash"] = hash;
  for (const auto& [k, v] : body.items()) doc[k] = v;
  auto os = open_out(path);
  os << doc.dump(2) << '\n';
}

void write_csv(const fs::path& path, const std::string& hash,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<std::string>>& rows) {
  auto os = open_out(path);
  os << "# config_hash=" << hash << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << '\n';
  }
}

void write_profile(const fs::path& path, const std::string& hash, const Profile& p,
                   std::optional<double> kappa) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  write_profile_csv(path, p, kappa, {"config_hash=" + hash});
}

void write_trace(const fs::path& path, const std::string& hash, const FlowResult& r) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& tp : r.energy_trace) {
    rows.push_back({num(tp.t), num(tp.energy), num(tp.sup_residual), tp.wedge_ok ? "1" : "0"});
  }
  write_csv(path, hash, {"t", "E", "sup_residual", "wedge_ok"}, rows);
}

ojson wedge_json(const WedgeVerdict& v) {
  if (inside(v)) return ojson{{"inside", true}};
  const auto& w = std::get<WedgeViolation>(v);
  return ojson{{"inside", false}, {"node", w.node}, {"excess", number(w.excess)}};
}

ojson spectrum_json(const SpectrumResult& s) {
  ojson ev = ojson::array();
  for (double l : s.eigenvalues) ev.push_back(number(l));
  return ojson{{"eigenvalues", ev},
               {"morse_index", s.morse_index},
               {"tol", number(s.tol)},
               {"marginal", s.marginal}};
}

ojson report_json(const SaddleReport& r, int n_used) {
  ojson j;
  j["kappa"] = number(r.kappa);
  j["type"] = to_string(r.type);
  j["n"] = n_used;
  j["boundary_class"] = {r.profile.m(), r.profile.n_end()};
  j["degree"] = degree(r.profile);
  j["energy"] = number(r.energy);
  j["sup_residual"] = number(r.residual);
  j["spectrum"] = spectrum_json(r.spectrum);
  j["lambda1"] = number(r.spectrum.eigenvalues.at(0));
  j["lambda2"] = r.spectrum.eigenvalues.size() > 1 ? number(r.spectrum.eigenvalues[1])
                                                    : ojson(nullptr);
  j["stability"] = to_string(r.stability);
  j["explicit_direction_value"] = number(r.explicit_direction_value);
  j["certified"] = r.certified;
  j["wedge"] = wedge_json(r.wedge_verdict);
  j["wedge"]["kind"] = r.type == SaddleType::first ? "W1" : "W2";
  j["hemispheric"] = r.hemispheric;
  j["provenance"] = to_string(r.provenance);
  if (r.flow_status) {
    j["flow_status"] = to_string(*r.flow_status);
    j["flow_time"] = number(r.flow_time);
  }
  return j;
}

std::string kappa_tag(double kappa) { return format_double(kappa); }

}  // namespace ferro::cli
