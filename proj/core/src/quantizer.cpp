#include "quantreactor/quantizer.hpp"

#include <stdexcept>

namespace quantreactor {

std::string to_string(const DomainLabel& label) {
  if (label.is_switching()) {
    return "S" + std::to_string(label.index) + "|" +
           std::to_string(label.index + 1);
  }
  return "R" + std::to_string(label.index);
}

RegionSet::RegionSet(RegionKind kind, std::vector<double> lower,
                     std::vector<double> upper)
    : kind_(kind), lower_(std::move(lower)), upper_(std::move(upper)) {
  const int n = static_cast<int>(lower_.size());
  if (n < 2) throw std::invalid_argument("RegionSet: need at least 2 regions");
  if (static_cast<int>(upper_.size()) != n - 1) {
    throw std::invalid_argument("RegionSet: expected n-1 upper bounds");
  }
  if (lower_.front() != 0.0) {
    throw std::invalid_argument("RegionSet: region 1 must start at 0");
  }
  for (int i = 1; i < n; ++i) {
    if (!(lower_[i] > lower_[i - 1])) {
      throw std::invalid_argument("RegionSet: lower bounds must increase");
    }
  }
  for (int i = 1; i < n - 1; ++i) {
    if (!(upper_[i] > upper_[i - 1])) {
      throw std::invalid_argument("RegionSet: upper bounds must increase");
    }
  }
  for (int i = 0; i < n - 1; ++i) {
    if (!(upper_[i] > lower_[i])) {
      throw std::invalid_argument("RegionSet: empty region");
    }
  }
  if (kind_ == RegionKind::Perfect) {
    for (int i = 0; i < n - 1; ++i) {
      if (upper_[i] != lower_[i + 1]) {
        throw std::invalid_argument(
            "RegionSet: perfect regions must abut exactly");
      }
    }
  } else {
    for (int i = 0; i < n - 1; ++i) {
      // Positive overlap at every boundary.
      if (!(lower_[i + 1] < upper_[i])) {
        throw std::invalid_argument(
            "RegionSet: uncertain regions must overlap pairwise");
      }
      // No triple overlap.
      if (i + 2 < n && !(upper_[i] < lower_[i + 2])) {
        throw std::invalid_argument(
            "RegionSet: overlap may not span three regions");
      }
    }
  }
}

std::vector<int> regions_containing(const RegionSet& rs, double y) {
  if (y < 0.0) throw std::domain_error("regions_containing: negative output");
  std::vector<int> hits;
  const int n = rs.count();
  for (int i = 1; i <= n; ++i) {
    const bool above = y >= rs.lower_bound(i);
    const bool below = i == n || y <= rs.upper_bound(i);
    if (above && below) hits.push_back(i);
  }
  return hits;
}

DomainLabel domain_of(const RegionSet& rs, double y) {
  const std::vector<int> hits = regions_containing(rs, y);
  if (hits.size() == 1) return DomainLabel::regular(hits.front());
  return DomainLabel::switching(hits.front());
}

RegionSet make_equidistant(double top, int n, RegionKind kind,
                           double overlap_fraction) {
  if (n < 2) throw std::domain_error("make_equidistant: need n >= 2");
  if (!(top > 0.0)) throw std::domain_error("make_equidistant: top must be positive");
  if (!(overlap_fraction >= 0.0 && overlap_fraction < 0.5)) {
    throw std::domain_error("make_equidistant: overlap fraction outside [0, 0.5)");
  }
  std::vector<double> lower(n);
  std::vector<double> upper(n - 1);
  lower[0] = 0.0;
  for (int i = 1; i < n; ++i) {
    const double boundary = top * static_cast<double>(i) / (n - 1);
    lower[i] = boundary;
    upper[i - 1] = boundary;
  }
  RegionSet perfect(RegionKind::Perfect, std::move(lower), std::move(upper));
  if (kind == RegionKind::Perfect) return perfect;
  return inflate(perfect, overlap_fraction);
}

RegionSet inflate(const RegionSet& perfect, double fraction) {
  if (perfect.kind() != RegionKind::Perfect) {
    throw std::domain_error("inflate: input must be a perfect set");
  }
  if (!(fraction > 0.0 && fraction < 0.5)) {
    throw std::domain_error("inflate: fraction outside (0, 0.5)");
  }
  const int n = perfect.count();
  std::vector<double> lower = perfect.lower_bounds();
  std::vector<double> upper = perfect.upper_bounds();
  for (int i = 0; i < n - 1; ++i) {
    const double width =
        perfect.upper_bound(i + 1) - perfect.lower_bound(i + 1);
    lower[i + 1] -= fraction * width;
    upper[i] += fraction * width;
  }
  try {
    return RegionSet(RegionKind::Uncertain, std::move(lower), std::move(upper));
  } catch (const std::invalid_argument& e) {
    throw std::domain_error(std::string("inflate: ") + e.what());
  }
}

}  // namespace quantreactor
