#include <charconv>
#include <string>

#include "mimo/errors.hpp"
#include "mimo/harness.hpp"

namespace mimo {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <class T>
std::vector<T> parse_list(std::string_view text, const char* what) {
  std::vector<T> out;
  std::string_view rest = trim(text);
  if (rest.empty()) return out;
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    T value{};
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw ConfigError(std::string("bad ") + what + " list entry '" + std::string(item) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

}  // namespace

std::vector<double> parse_double_list(std::string_view text) {
  return parse_list<double>(text, "number");
}

std::vector<int> parse_int_list(std::string_view text) { return parse_list<int>(text, "integer"); }

Detector parse_detector(std::string_view text) {
  if (text == "zf") return Detector::zf;
  if (text == "mmse") return Detector::mmse;
  if (text == "proposed") return Detector::sd_proposed;
  if (text == "se") return Detector::sd_se;
  if (text == "fp") return Detector::sd_fp;
  throw ConfigError("unknown detector '" + std::string(text) + "' (expected zf|mmse|proposed|se|fp)");
}

std::string_view to_string(Detector d) noexcept {
  switch (d) {
    case Detector::zf: return "zf";
    case Detector::mmse: return "mmse";
    case Detector::sd_proposed: return "proposed";
    case Detector::sd_se: return "se";
    case Detector::sd_fp: return "fp";
  }
  return "?";
}

bool is_linear(Detector d) noexcept { return d == Detector::zf || d == Detector::mmse; }

void SimConfig::validate() const {
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (snr_db_list.empty()) throw ConfigError("SNR list must not be empty");
  if (n_users < 1 || n_rx < n_users) {
    throw ConfigError("need n_rx >= n_users >= 1 (got n_rx=" + std::to_string(n_rx) +
                      ", n_users=" + std::to_string(n_users) + ")");
  }
  if (modulation != 4 && modulation != 16 && modulation != 64) {
    throw ConfigError("modulation must be 4, 16 or 64");
  }
  if (!(es > 0.0)) throw ConfigError("es must be positive");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  for (int k : k_list) {
    if (k < 0) throw ConfigError("iteration counts must be >= 0");
  }
  if (inverse.kind == InverseProvider::Kind::iterative &&
      (!is_supported_order(inverse.order) || inverse.iterations < 0)) {
    throw ConfigError("invalid iterative inverse");
  }
}

}  // namespace mimo
