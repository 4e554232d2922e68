#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pnhs/core.hpp"
#include "pnhs/diophantine.hpp"

namespace pnhs {

class NotAntichain : public Error {
public:
  using Error::Error;
};

/// Coordinate of a partial vector: a natural, or std::nullopt for ω.
using Entry = std::optional<value_t>;
inline constexpr std::nullopt_t omega = std::nullopt;

/// A vector over naturals extended with ω ("unspecified"). Its instances
/// are the concrete vectors agreeing with it on every specified coordinate.
class PartialVector {
public:
  PartialVector() = default;
  explicit PartialVector(std::vector<Entry> entries) : entries_(std::move(entries)) {}
  static PartialVector all_omega(std::size_t n) { return PartialVector(std::vector<Entry>(n)); }
  static PartialVector concrete(const Vector& v);

  std::size_t size() const { return entries_.size(); }
  const Entry& operator[](std::size_t i) const { return entries_[i]; }
  Entry& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<Entry>& entries() const { return entries_; }

  bool is_concrete() const;
  std::vector<std::size_t> omega_coords() const;
  /// ω replaced by 0.
  Vector fixed_part() const;
  /// ω replaced by `n` (the diagonal schedule point).
  Vector instantiate(value_t n) const;
  bool has_instance(const Vector& x) const;
  /// Every instance of `other` is an instance of *this.
  bool subsumes(const PartialVector& other) const;

  std::string to_string() const;

  bool operator==(const PartialVector&) const = default;
  /// Lexicographic, with ω above every natural.
  std::strong_ordering operator<=>(const PartialVector& other) const;

private:
  std::vector<Entry> entries_;
};

struct PartialVectorHash {
  std::size_t operator()(const PartialVector& v) const noexcept;
};

/// { base + sum u_j * periods[j] : u in N^k }. Construction normalizes:
/// zero and duplicate periods are dropped, periods are sorted.
class LinearSet {
public:
  LinearSet() = default;
  explicit LinearSet(Vector base, std::vector<Vector> periods = {});

  std::size_t dim() const { return base_.size(); }
  const Vector& base() const { return base_; }
  const std::vector<Vector>& periods() const { return periods_; }

  Vector at(const Vector& coefficients) const;

  auto operator<=>(const LinearSet&) const = default;
  bool operator==(const LinearSet&) const = default;

private:
  Vector base_;
  std::vector<Vector> periods_;
};

/// Finite union of linear sets of one dimension. Components are kept
/// sorted and deduplicated; syntactically subsumed components are pruned.
class SemilinearSet {
public:
  explicit SemilinearSet(std::size_t dim) : dim_(dim) {}
  SemilinearSet(std::size_t dim, std::vector<LinearSet> components);
  static SemilinearSet of(LinearSet l);
  static SemilinearSet universe(std::size_t dim);
  static SemilinearSet finite(std::size_t dim, const std::vector<Vector>& points);

  std::size_t dim() const { return dim_; }
  const std::vector<LinearSet>& components() const { return components_; }
  bool empty() const { return components_.empty(); }
  std::size_t size() const { return components_.size(); }

  bool operator==(const SemilinearSet&) const = default;

private:
  void normalize();

  std::size_t dim_;
  std::vector<LinearSet> components_;
};

/// Antichain presenting the upward-closed set ↑elements.
struct MinBasis {
  std::size_t dim = 0;
  std::vector<Vector> elements;  // sorted

  bool is_antichain() const;
  bool covers(const Vector& x) const;
  /// The minimal elements of `points` (sorted).
  static MinBasis minimal_of(std::size_t dim, std::vector<Vector> points);
};

/// target ∈ { sum n_j g_j : n in N^k } (zero generators ignored).
bool monoid_member(const Vector& target, const std::vector<Vector>& generators);

bool member(const LinearSet& l, const Vector& x);
bool member(const SemilinearSet& s, const Vector& x);

SemilinearSet unite(const SemilinearSet& s, const SemilinearSet& t);

/// { offset + M·s : s in S } where `matrix` has one row per output coordinate.
SemilinearSet image_affine(const SemilinearSet& s, const std::vector<Vector>& matrix,
                           const Vector& offset);
LinearSet image_affine(const LinearSet& l, const std::vector<Vector>& matrix, const Vector& offset);

/// Maximal boxes covering N^n minus ↑B. Each box is returned as a partial
/// vector whose concrete entries are inclusive upper bounds and whose ω
/// entries are unbounded.
std::vector<PartialVector> complement_boxes(const MinBasis& basis);

/// Presentation of N^n minus ↑B; bounded box coordinates are enumerated
/// into bases, unbounded ones get unit periods.
SemilinearSet complement_upward(const MinBasis& basis);

SemilinearSet constraints_to_semilinear(const ConstraintSystem& sys);
SemilinearSet intersect(const LinearSet& a, const LinearSet& b);
SemilinearSet intersect(const SemilinearSet& s, const SemilinearSet& t);
LinearSet instances_of(const PartialVector& v);

std::string to_string(const LinearSet& l);

}  // namespace pnhs
