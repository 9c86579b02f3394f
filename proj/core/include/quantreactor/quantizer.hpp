#pragma once

#include <string>
#include <vector>

namespace quantreactor {

enum class RegionKind { Perfect, Uncertain };

/// Measurement-domain label: either unambiguously inside one region, or in
/// the switching set shared by two adjacent regions.
struct DomainLabel {
  enum class Kind { Regular, Switching };

  Kind kind = Kind::Regular;
  int index = 1;  // region index (1-based); Switching spans (index, index+1)

  static DomainLabel regular(int i) { return {Kind::Regular, i}; }
  static DomainLabel switching(int i) { return {Kind::Switching, i}; }

  bool is_switching() const { return kind == Kind::Switching; }
  int lower_region() const { return index; }
  int upper_region() const { return is_switching() ? index + 1 : index; }

  bool operator==(const DomainLabel&) const = default;
};

std::string to_string(const DomainLabel& label);  // "R3" or "S3|4"

/// Quantizer geometry: n measurement regions over the output proxy, the
/// last one unbounded above. Perfect sets abut exactly; uncertain sets
/// overlap pairwise (never triple).
class RegionSet {
public:
  RegionSet(RegionKind kind, std::vector<double> lower,
            std::vector<double> upper);

  RegionKind kind() const { return kind_; }
  int count() const { return static_cast<int>(lower_.size()); }

  /// Lower bound of region i (1-based). Region 1 starts at zero.
  double lower_bound(int i) const { return lower_.at(i - 1); }
  /// Upper bound of region i (1-based, i < n; region n has none).
  double upper_bound(int i) const { return upper_.at(i - 1); }

  const std::vector<double>& lower_bounds() const { return lower_; }
  const std::vector<double>& upper_bounds() const { return upper_; }

private:
  RegionKind kind_;
  std::vector<double> lower_;  // size n
  std::vector<double> upper_;  // size n-1
};

/// All regions whose interval contains y (closed bounds). One element on
/// regular domains, two on switching domains.
std::vector<int> regions_containing(const RegionSet& rs, double y);

DomainLabel domain_of(const RegionSet& rs, double y);

/// Equidistant construction: boundaries at i/(n-1) * top for i = 1..n-1.
/// Uncertain sets are obtained by inflating the perfect set by
/// overlap_fraction of the region width on each side of every boundary.
RegionSet make_equidistant(double top, int n, RegionKind kind,
                           double overlap_fraction = 0.0);

/// Widen every boundary of a perfect set into an overlap band. Each boundary
/// b between regions i and i+1 becomes the band
/// [b - fraction*w_i, b + fraction*w_i] with w_i the width of region i.
RegionSet inflate(const RegionSet& perfect, double fraction);

}  // namespace quantreactor
