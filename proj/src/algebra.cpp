#include "pstar/algebra.hpp"

#include <algorithm>
#include <sstream>

#include "pstar/linalg.hpp"

namespace pstar {

void SparseTensor::sort_entries() {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
  });
}

Vector SparseTensor::contract(const Vector& x, const Vector& y) const {
  Vector out = Vector::Zero(target_dim);
  for (const Entry& e : entries) out(e.k) += x(e.i) * y(e.j) * e.v;
  return out;
}

Matrix SparseTensor::left_action(const Vector& x) const {
  Matrix out = Matrix::Zero(target_dim, right_dim);
  for (const Entry& e : entries) out(e.k, e.j) += x(e.i) * e.v;
  return out;
}

Matrix SparseTensor::dense_slice(int i) const {
  Matrix out = Matrix::Zero(right_dim, target_dim);
  for (const Entry& e : entries)
    if (e.i == i) out(e.j, e.k) += e.v;
  return out;
}

double SparseTensor::density() const {
  const double total = double(left_dim) * right_dim * target_dim;
  return total == 0 ? 0.0 : entries.size() / total;
}

bool Element::is_zero() const {
  for (const auto& [s, v] : comps)
    if (v.cwiseAbs().maxCoeff() != 0.0) return false;
  return true;
}

Element& Element::operator+=(const Element& o) {
  for (const auto& [s, v] : o.comps) {
    auto it = comps.find(s);
    if (it == comps.end())
      comps[s] = v;
    else
      it->second += v;
  }
  return *this;
}

Element& Element::operator*=(Complex c) {
  for (auto& [s, v] : comps) v *= c;
  return *this;
}

Element operator-(const Element& a, const Element& b) {
  Element out = a;
  out += Complex(-1.0, 0.0) * b;
  return out;
}

void Element::prune() {
  for (auto it = comps.begin(); it != comps.end();) {
    if (it->second.size() == 0 || it->second.cwiseAbs().maxCoeff() == 0.0)
      it = comps.erase(it);
    else
      ++it;
  }
}

double Element::max_abs() const {
  double m = 0.0;
  for (const auto& [s, v] : comps)
    if (v.size() > 0) m = std::max(m, v.cwiseAbs().maxCoeff());
  return m;
}

PartialStarAlgebra::PartialStarAlgebra(
    std::vector<Sector> sectors,
    std::map<std::pair<std::string, std::string>, TableEntry> table,
    std::map<std::string, Matrix> star_maps, std::optional<Element> unit,
    double tol)
    : sectors_(std::move(sectors)),
      table_(std::move(table)),
      star_maps_(std::move(star_maps)),
      unit_(std::move(unit)),
      tol_(tol) {
  offsets_.resize(sectors_.size() + 1, 0);
  for (size_t i = 0; i < sectors_.size(); ++i) {
    if (sectors_[i].dim <= 0)
      throw MalformedInputError("sector " + sectors_[i].id +
                                " has nonpositive dimension");
    if (!index_.emplace(sectors_[i].id, int(i)).second)
      throw MalformedInputError("duplicate sector id " + sectors_[i].id);
    offsets_[i + 1] = offsets_[i] + sectors_[i].dim;
  }
  total_dim_ = offsets_.back();
  check_consistency();
}

void PartialStarAlgebra::check_consistency() const {
  for (const Sector& s : sectors_) {
    auto it = index_.find(s.star_id);
    if (it == index_.end())
      throw MalformedInputError("star image of sector " + s.id + " unknown");
    const Sector& t = sectors_[it->second];
    if (t.star_id != s.id)
      throw MalformedInputError("star is not an involution on sector ids: " +
                                s.id + " -> " + s.star_id + " -> " + t.star_id);
    if (t.dim != s.dim)
      throw MalformedInputError("star image of sector " + s.id +
                                " has mismatched dimension");
  }
  for (const auto& [key, entry] : table_) {
    const auto& [ls, rs] = key;
    if (!has_sector(ls) || !has_sector(rs) || !has_sector(entry.target))
      throw MalformedInputError("table entry references unknown sector");
    const SparseTensor& t = entry.tensor;
    if (t.left_dim != sector(ls).dim || t.right_dim != sector(rs).dim ||
        t.target_dim != sector(entry.target).dim)
      throw MalformedInputError("tensor shape mismatch for (" + ls + "," + rs +
                                ")");
    for (const auto& e : t.entries)
      if (e.i < 0 || e.i >= t.left_dim || e.j < 0 || e.j >= t.right_dim ||
          e.k < 0 || e.k >= t.target_dim)
        throw MalformedInputError("tensor index out of range for (" + ls + "," +
                                  rs + ")");
    // Gamma axiom (i), set level: the star-image pair must also be defined.
    auto mirror = table_.find({star_sector(rs), star_sector(ls)});
    if (mirror == table_.end())
      throw MalformedInputError("table lacks star-image entry for (" + ls +
                                "," + rs + ")");
    if (mirror->second.target != star_sector(entry.target))
      throw MalformedInputError("star-image entry of (" + ls + "," + rs +
                                ") has wrong target");
  }
  for (const auto& [id, m] : star_maps_) {
    if (!has_sector(id)) throw MalformedInputError("star map for unknown sector");
    const Sector& s = sector(id);
    if (m.rows() != s.dim || m.cols() != s.dim)
      throw MalformedInputError("star map shape mismatch for sector " + id);
  }
  if (unit_) {
    validate_element(*unit_);
    for (const auto& [s, v] : unit_->comps)
      for (const Sector& t : sectors_)
        if (!product_defined(s, t.id) || !product_defined(t.id, s))
          throw MalformedInputError("declared unit is not total");
  }
}

int PartialStarAlgebra::sector_index(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw MalformedInputError("unknown sector id " + id);
  return it->second;
}

const Sector& PartialStarAlgebra::sector(const std::string& id) const {
  return sectors_[sector_index(id)];
}

bool PartialStarAlgebra::has_sector(const std::string& id) const {
  return index_.count(id) > 0;
}

const std::string& PartialStarAlgebra::star_sector(const std::string& id) const {
  return sector(id).star_id;
}

Matrix PartialStarAlgebra::star_matrix(const std::string& id) const {
  auto it = star_maps_.find(id);
  if (it != star_maps_.end()) return it->second;
  return Matrix::Identity(sector(id).dim, sector(id).dim);
}

bool PartialStarAlgebra::product_defined(const std::string& s,
                                         const std::string& t) const {
  return table_.count({s, t}) > 0;
}

const TableEntry* PartialStarAlgebra::table_entry(const std::string& s,
                                                  const std::string& t) const {
  auto it = table_.find({s, t});
  return it == table_.end() ? nullptr : &it->second;
}

std::pair<std::string, int> PartialStarAlgebra::basis_ref(int g) const {
  for (size_t i = 0; i < sectors_.size(); ++i)
    if (g < offsets_[i + 1]) return {sectors_[i].id, g - offsets_[i]};
  throw MalformedInputError("basis index out of range");
}

int PartialStarAlgebra::global_index(const std::string& sec, int i) const {
  return offsets_[sector_index(sec)] + i;
}

Element PartialStarAlgebra::basis_element(int g) const {
  auto [sec, i] = basis_ref(g);
  Element e;
  Vector v = Vector::Zero(sector(sec).dim);
  v(i) = 1.0;
  e.comps[sec] = v;
  return e;
}

std::string PartialStarAlgebra::basis_name(int g) const {
  auto [sec, i] = basis_ref(g);
  std::ostringstream os;
  os << sec << "[" << i << "]";
  return os.str();
}

Vector PartialStarAlgebra::coords(const Element& x,
                                  const std::vector<std::string>& secs) const {
  int n = 0;
  for (const auto& s : secs) n += sector(s).dim;
  Vector out = Vector::Zero(n);
  int at = 0;
  for (const auto& s : secs) {
    auto it = x.comps.find(s);
    if (it != x.comps.end()) out.segment(at, sector(s).dim) = it->second;
    at += sector(s).dim;
  }
  for (const auto& [s, v] : x.comps)
    if (std::find(secs.begin(), secs.end(), s) == secs.end() &&
        v.cwiseAbs().maxCoeff() != 0.0)
      throw DomainError("element has support outside the listed sectors");
  return out;
}

Element PartialStarAlgebra::from_coords(
    const Vector& v, const std::vector<std::string>& secs) const {
  Element e;
  int at = 0;
  for (const auto& s : secs) {
    const int d = sector(s).dim;
    Vector seg = v.segment(at, d);
    if (seg.cwiseAbs().maxCoeff() != 0.0) e.comps[s] = seg;
    at += d;
  }
  return e;
}

void PartialStarAlgebra::validate_element(const Element& x) const {
  for (const auto& [s, v] : x.comps) {
    if (!has_sector(s))
      throw MalformedInputError("element references unknown sector " + s);
    if (v.size() != sector(s).dim)
      throw MalformedInputError("element vector length mismatch in sector " + s);
  }
}

std::optional<Element> PartialStarAlgebra::multiply(const Element& x,
                                                    const Element& y) const {
  validate_element(x);
  validate_element(y);
  // Multipliability is the conjunction over supported sector pairs.
  for (const auto& [s, xv] : x.comps)
    for (const auto& [t, yv] : y.comps)
      if (!product_defined(s, t)) return std::nullopt;
  Element out;
  for (const auto& [s, xv] : x.comps)
    for (const auto& [t, yv] : y.comps) {
      const TableEntry& e = *table_entry(s, t);
      Vector z = e.tensor.contract(xv, yv);
      auto it = out.comps.find(e.target);
      if (it == out.comps.end())
        out.comps[e.target] = z;
      else
        it->second += z;
    }
  out.prune();
  return out;
}

Element PartialStarAlgebra::star(const Element& x) const {
  validate_element(x);
  Element out;
  for (const auto& [s, v] : x.comps) {
    const std::string& t = star_sector(s);
    Vector w = star_matrix(s) * v.conjugate();
    auto it = out.comps.find(t);
    if (it == out.comps.end())
      out.comps[t] = w;
    else
      it->second += w;
  }
  out.prune();
  return out;
}

std::vector<std::string> PartialStarAlgebra::right_multiplier_sectors(
    const std::set<std::string>& S) const {
  for (const auto& s : S)
    if (!has_sector(s)) throw MalformedInputError("unknown sector id " + s);
  std::vector<std::string> out;
  for (const Sector& t : sectors_) {
    bool ok = true;
    for (const auto& s : S)
      if (!product_defined(s, t.id)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(t.id);
  }
  return out;
}

std::vector<std::string> PartialStarAlgebra::universal_right_multipliers()
    const {
  std::set<std::string> all;
  for (const Sector& s : sectors_) all.insert(s.id);
  return right_multiplier_sectors(all);
}

bool is_quasi_star_algebra(const PartialStarAlgebra& a,
                           std::vector<std::string>* a0) {
  // Candidate A0: sectors multipliable with everything on both sides.
  std::vector<std::string> cand;
  for (const Sector& s : a.sectors()) {
    bool total = true;
    for (const Sector& t : a.sectors())
      if (!a.product_defined(s.id, t.id) || !a.product_defined(t.id, s.id)) {
        total = false;
        break;
      }
    if (total) cand.push_back(s.id);
  }
  if (cand.empty()) return false;
  std::set<std::string> a0set(cand.begin(), cand.end());
  for (const Sector& s : a.sectors())
    for (const Sector& t : a.sectors()) {
      const bool quasi = a0set.count(s.id) > 0 || a0set.count(t.id) > 0;
      if (quasi != a.product_defined(s.id, t.id)) return false;
    }
  // A0 must be a *-subalgebra.
  for (const auto& s : cand) {
    if (!a0set.count(a.star_sector(s))) return false;
    for (const auto& t : cand)
      if (!a0set.count(a.table_entry(s, t)->target)) return false;
  }
  if (a0) *a0 = cand;
  return true;
}

}  // namespace pstar
