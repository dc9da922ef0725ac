#include "argl/sweep_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

#include "argl/errors.hpp"

namespace argl {

namespace {

constexpr std::string_view kHeader = "q,j,re_L,im_L,arg,branch_residual";

double parse_double(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DomainError("malformed number '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::string format_decimal(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";  // no "-0"
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 15);
  return std::string(buf, ptr);
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep, const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << "# " << c << '\n';
  out << kHeader << '\n';
  for (const auto& r : sweep.records) {
    out << r.q << ',' << r.j.value() << ',' << format_decimal(r.l_value.real()) << ','
        << format_decimal(r.l_value.imag()) << ',' << format_decimal(r.arg) << ','
        << format_decimal(r.branch_residual) << '\n';
  }
}

SweepResult read_sweep_csv(std::istream& in) {
  SweepResult result;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != kHeader) throw DomainError("unexpected sweep CSV header: " + line);
      header_seen = true;
      continue;
    }
    const auto f = split(line);
    if (f.size() != 6) throw DomainError("sweep CSV row must have 6 fields");
    LValueRecord r;
    r.q = static_cast<std::uint64_t>(parse_double(f[0]));
    r.j = CharacterIndex(static_cast<std::uint64_t>(parse_double(f[1])));
    r.l_value = {parse_double(f[2]), parse_double(f[3])};
    r.arg = parse_double(f[4]);
    r.branch_residual = parse_double(f[5]);
    r.branch_verified = std::abs(r.branch_residual) < kBranchThreshold;
    if (result.q == 0) result.q = r.q;
    if (r.q != result.q) throw DomainError("sweep CSV mixes moduli");
    result.records.push_back(r);
  }
  if (!header_seen) throw DomainError("sweep CSV has no header");
  if (result.q < 3 || result.records.size() != result.q - 2) {
    throw DomainError("sweep CSV must hold one row per non-principal character");
  }
  result.max_arg = -std::numeric_limits<double>::infinity();
  result.min_arg = std::numeric_limits<double>::infinity();
  for (const auto& r : result.records) {
    result.max_arg = std::max(result.max_arg, r.arg);
    result.min_arg = std::min(result.min_arg, r.arg);
  }
  return result;
}

std::vector<double> parse_decimal_list(std::string_view text) {
  std::vector<double> out;
  if (text.empty()) return out;
  for (const auto part : split(text)) out.push_back(parse_double(part));
  return out;
}

}  // namespace argl
