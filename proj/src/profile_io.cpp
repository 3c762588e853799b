#include "ferro/profile_io.hpp"

#include <charconv>
#include <numbers>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ferro {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  }
  return x;
}

void write_profile_csv(std::ostream& os, const Profile& p,
                       std::optional<double> kappa,
                       const std::vector<std::string>& comments) {
  for (const auto& c : comments) os << "# " << c << '\n';
  os << "# m=" << p.m() << " n=" << p.n_end()
     << " kappa=" << (kappa ? format_double(*kappa) : std::string("unknown"))
     << '\n';
  os << "theta,h\n";
  const auto th = p.grid().nodes();
  for (std::size_t i = 0; i < p.size(); ++i) {
    os << format_double(th[i]) << ',' << format_double(p[i]) << '\n';
  }
}

void write_profile_csv(const std::filesystem::path& path, const Profile& p,
                       std::optional<double> kappa,
                       const std::vector<std::string>& comments) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  write_profile_csv(os, p, kappa, comments);
}

namespace {

std::optional<std::string> header_field(const std::string& line,
                                        const std::string& key) {
  std::istringstream ss(line.substr(1));
  std::string tok;
  while (ss >> tok) {
    if (tok.rfind(key + "=", 0) == 0) return tok.substr(key.size() + 1);
  }
  return std::nullopt;
}

int parse_int(const std::string& s, int line_no) {
  int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::runtime_error("line " + std::to_string(line_no) +
                             ": bad integer '" + s + "'");
  }
  return v;
}

}  // namespace

ProfileFile read_profile_csv(std::istream& is) {
  std::optional<int> m;
  std::optional<int> n_end;
  std::optional<double> kappa;
  std::vector<double> theta;
  std::vector<double> h;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (auto v = header_field(line, "m")) m = parse_int(*v, line_no);
      if (auto v = header_field(line, "n")) n_end = parse_int(*v, line_no);
      if (auto v = header_field(line, "kappa"); v && *v != "unknown") {
        kappa = parse_double(*v);
      }
      continue;
    }
    if (line.rfind("theta", 0) == 0) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": expected 'theta,h'");
    }
    try {
      theta.push_back(parse_double(std::string_view(line).substr(0, comma)));
      h.push_back(parse_double(std::string_view(line).substr(comma + 1)));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!m || !n_end) {
    throw std::runtime_error("profile csv: missing '# m=<m> n=<n>' header");
  }
  if (h.size() < 2) throw std::runtime_error("profile csv: no data rows");
  const int n = static_cast<int>(h.size()) - 1;
  auto grid = make_grid(n);
  const auto nodes = grid->nodes();
  for (int i = 0; i <= n; ++i) {
    if (std::abs(theta[i] - nodes[i]) > 1e-12) {
      throw std::runtime_error("profile csv: theta at row " + std::to_string(i) +
                               " does not match a uniform grid with n = " +
                               std::to_string(n));
    }
  }
  if (std::abs(h.front() - *m * std::numbers::pi) > 1e-9 ||
      std::abs(h.back() - *n_end * std::numbers::pi) > 1e-9) {
    throw std::runtime_error("profile csv: end values disagree with m, n header");
  }
  return ProfileFile{Profile(std::move(grid), std::move(h), *m, *n_end), kappa};
}

ProfileFile read_profile_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  return read_profile_csv(is);
}

}  // namespace ferro
