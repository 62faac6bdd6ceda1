#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "qca/errors.hpp"
#include "qca/experiment.hpp"

namespace qca {

std::vector<double> Binning::edges() const {
  if (!(width > 0.0) || !std::isfinite(width)) throw InvalidArgument("bin width must be > 0");
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) throw InvalidArgument("bin range must satisfy lo < hi");
  std::vector<double> e;
  if (scale == BinScale::Linear) {
    const auto bins = static_cast<std::size_t>(std::ceil((hi - lo) / width - 1e-9));
    for (std::size_t i = 0; i < bins; ++i) e.push_back(lo + width * static_cast<double>(i));
  } else {
    if (!(lo > 0.0)) throw InvalidArgument("log binning needs lo > 0");
    const double span = std::log10(hi) - std::log10(lo);
    const auto bins = static_cast<std::size_t>(std::ceil(span / width - 1e-9));
    for (std::size_t i = 0; i < bins; ++i) e.push_back(lo * std::pow(10.0, width * static_cast<double>(i)));
  }
  e.push_back(hi);
  return e;
}

std::uint64_t Histogram::total() const {
  std::uint64_t t = underflow + overflow;
  for (auto c : counts) t += c;
  return t;
}

Histogram make_histogram(const Binning& binning, std::span<const double> samples) {
  Histogram h;
  h.edges = binning.edges();
  h.counts.assign(h.edges.size() - 1, 0);
  for (double x : samples) {
    if (x < h.edges.front()) {
      ++h.underflow;
    } else if (x > h.edges.back()) {
      ++h.overflow;
    } else {
      auto it = std::upper_bound(h.edges.begin(), h.edges.end(), x);
      auto bin = static_cast<std::size_t>(std::distance(h.edges.begin(), it)) - 1;
      bin = std::min(bin, h.counts.size() - 1);
      ++h.counts[bin];
    }
  }
  return h;
}

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_histogram_csv(const std::filesystem::path& path, const Histogram& h) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "bin_left,bin_right,count\n";
  out << "-inf," << format_double(h.edges.front()) << ',' << h.underflow << '\n';
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    out << format_double(h.edges[i]) << ',' << format_double(h.edges[i + 1]) << ',' << h.counts[i] << '\n';
  }
  out << format_double(h.edges.back()) << ",inf," << h.overflow << '\n';
}

}  // namespace qca
