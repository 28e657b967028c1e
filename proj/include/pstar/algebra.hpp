#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pstar/errors.hpp"
#include "pstar/types.hpp"

namespace pstar {

/// One homogeneous summand of the grading. `star_id` names the sector the
/// involution maps this one onto.
struct Sector {
  std::string id;
  int dim = 0;
  std::string star_id;
};

/// Sparse 3-index tensor of structure coefficients for one sector product:
/// (x * y)_k = sum_{i,j} x_i y_j c[i,j,k].
struct SparseTensor {
  struct Entry {
    int i, j, k;
    Complex v;
  };
  int left_dim = 0, right_dim = 0, target_dim = 0;
  std::vector<Entry> entries;  // kept sorted by (i, j, k)

  void sort_entries();
  Vector contract(const Vector& x, const Vector& y) const;
  /// Matrix of y -> x*y (target_dim x right_dim).
  Matrix left_action(const Vector& x) const;
  Matrix dense_slice(int i) const;  // right_dim x target_dim slab for fixed i
  double density() const;
};

/// Entry of the sector product table: target sector plus coefficients.
struct TableEntry {
  std::string target;
  SparseTensor tensor;
};

/// Sparse element: one coefficient vector per supported sector. Sectors with
/// an exactly-zero vector are dropped at construction.
struct Element {
  std::map<std::string, Vector> comps;

  bool is_zero() const;
  Element& operator+=(const Element& o);
  Element& operator*=(Complex c);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator*(Complex c, Element a) { return a *= c; }
  friend Element operator-(const Element& a, const Element& b);
  void prune();  // drop exactly-zero sector vectors
  double max_abs() const;
};

/// Finite sector-graded model of a partial *-algebra. Partiality is carried
/// by the sector product table: an element pair is multipliable iff every
/// sector pair in their supports has a table entry.
class PartialStarAlgebra {
 public:
  PartialStarAlgebra() = default;
  PartialStarAlgebra(std::vector<Sector> sectors,
                     std::map<std::pair<std::string, std::string>, TableEntry> table,
                     std::map<std::string, Matrix> star_maps,
                     std::optional<Element> unit = std::nullopt,
                     double tol = kDefaultTol);

  const std::vector<Sector>& sectors() const { return sectors_; }
  int sector_count() const { return static_cast<int>(sectors_.size()); }
  int sector_index(const std::string& id) const;
  const Sector& sector(const std::string& id) const;
  bool has_sector(const std::string& id) const;
  const std::string& star_sector(const std::string& id) const;
  /// Star matrix of a sector (identity when none was given).
  Matrix star_matrix(const std::string& id) const;

  bool product_defined(const std::string& s, const std::string& t) const;
  const TableEntry* table_entry(const std::string& s, const std::string& t) const;
  const std::map<std::pair<std::string, std::string>, TableEntry>& table() const {
    return table_;
  }

  int total_dim() const { return total_dim_; }
  double tol() const { return tol_; }
  const std::optional<Element>& unit() const { return unit_; }

  /// Global basis: sectors in declaration order, then coordinate index.
  int basis_count() const { return total_dim_; }
  std::pair<std::string, int> basis_ref(int g) const;
  int global_index(const std::string& sector, int i) const;
  Element basis_element(int g) const;
  std::string basis_name(int g) const;  // e.g. "B[2]"

  /// Coordinates of an element over the listed sectors (stacked in order).
  Vector coords(const Element& x, const std::vector<std::string>& secs) const;
  Element from_coords(const Vector& v, const std::vector<std::string>& secs) const;

  /// Tensor-contracted partial product; nullopt means Undefined (the formal
  /// outcome, not an error).
  std::optional<Element> multiply(const Element& x, const Element& y) const;
  Element star(const Element& x) const;

  /// Sectors t with (s, t) in the table for every s in S. S empty gives all
  /// sectors; S = all sectors gives R(A).
  std::vector<std::string> right_multiplier_sectors(
      const std::set<std::string>& S) const;
  std::vector<std::string> universal_right_multipliers() const;  // R(A)

  void validate_element(const Element& x) const;

 private:
  std::vector<Sector> sectors_;
  std::map<std::string, int> index_;
  std::map<std::pair<std::string, std::string>, TableEntry> table_;
  std::map<std::string, Matrix> star_maps_;
  std::optional<Element> unit_;
  std::vector<int> offsets_;
  int total_dim_ = 0;
  double tol_ = kDefaultTol;

  void check_consistency() const;
};

/// True when the table is exactly the quasi *-algebra relation over some
/// sector subset A0; the detected A0 is written to `a0` when given.
bool is_quasi_star_algebra(const PartialStarAlgebra& a,
                           std::vector<std::string>* a0 = nullptr);

}  // namespace pstar
