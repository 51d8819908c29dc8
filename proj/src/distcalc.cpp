#include "engel/distcalc.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace engel {

// VectorField

VectorField::VectorField(Ambient ambient, std::vector<MultiPoly> components)
    : ambient_(std::move(ambient)), comps_(std::move(components)) {
  if (comps_.size() != ambient_.size()) throw AmbientError("vector field needs one component per coordinate");
  for (const auto& c : comps_) require_same_ambient(c.ambient(), ambient_, "vector field component");
}

VectorField VectorField::zero(const Ambient& ambient) {
  return {ambient, std::vector<MultiPoly>(ambient.size(), MultiPoly(ambient))};
}

VectorField VectorField::coordinate(const Ambient& ambient, std::size_t i) {
  auto comps = std::vector<MultiPoly>(ambient.size(), MultiPoly(ambient));
  comps.at(i) = MultiPoly::constant(ambient, 1);
  return {ambient, std::move(comps)};
}

VectorField VectorField::coordinate(const Ambient& ambient, std::string_view name) {
  return coordinate(ambient, ambient.require_index(name));
}

bool VectorField::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const MultiPoly& p) { return p.is_zero(); });
}

MultiPoly VectorField::apply(const MultiPoly& f) const {
  require_same_ambient(ambient_, f.ambient(), "field action");
  MultiPoly acc(ambient_);
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    if (comps_[i].is_zero() || !f.involves(i)) continue;
    acc += comps_[i] * differentiate(f, i);
  }
  return acc;
}

VectorField VectorField::operator-() const {
  std::vector<MultiPoly> out;
  for (const auto& c : comps_) out.push_back(-c);
  return {ambient_, std::move(out)};
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  require_same_ambient(a.ambient_, b.ambient_, "field add");
  std::vector<MultiPoly> out;
  for (std::size_t i = 0; i < a.comps_.size(); ++i) out.push_back(a.comps_[i] + b.comps_[i]);
  return {a.ambient_, std::move(out)};
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  require_same_ambient(a.ambient_, b.ambient_, "field sub");
  std::vector<MultiPoly> out;
  for (std::size_t i = 0; i < a.comps_.size(); ++i) out.push_back(a.comps_[i] - b.comps_[i]);
  return {a.ambient_, std::move(out)};
}

VectorField operator*(const MultiPoly& f, const VectorField& x) {
  std::vector<MultiPoly> out;
  for (const auto& c : x.comps_) out.push_back(f * c);
  return {x.ambient_, std::move(out)};
}

VectorField operator*(const GaussianRational& c, const VectorField& x) {
  std::vector<MultiPoly> out;
  for (const auto& p : x.comps_) out.push_back(p * c);
  return {x.ambient_, std::move(out)};
}

std::string VectorField::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    if (comps_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << comps_[i].str() << ")*d/d" << ambient_.name(i);
  }
  return first ? "0" : os.str();
}

// DiffForm

DiffForm::DiffForm(Ambient ambient, int degree) : ambient_(std::move(ambient)), degree_(degree) {
  if (degree < 0 || degree > static_cast<int>(ambient_.size()))
    throw std::invalid_argument("form degree out of range");
}

DiffForm DiffForm::function(const MultiPoly& f) {
  DiffForm out(f.ambient(), 0);
  out.add({}, f);
  return out;
}

DiffForm DiffForm::coordinate(const Ambient& ambient, std::size_t i) {
  if (i >= ambient.size()) throw AmbientError("coordinate index out of range");
  DiffForm out(ambient, 1);
  out.add({static_cast<int>(i)}, MultiPoly::constant(ambient, 1));
  return out;
}

DiffForm DiffForm::coordinate(const Ambient& ambient, std::string_view name) {
  return coordinate(ambient, ambient.require_index(name));
}

DiffForm DiffForm::one_form(const Ambient& ambient, const std::vector<MultiPoly>& coefficients) {
  if (coefficients.size() != ambient.size()) throw AmbientError("one_form: wrong coefficient count");
  DiffForm out(ambient, 1);
  for (std::size_t i = 0; i < coefficients.size(); ++i) out.add({static_cast<int>(i)}, coefficients[i]);
  return out;
}

MultiPoly DiffForm::coefficient(const FormIndex& index) const {
  auto it = coeffs_.find(index);
  return it == coeffs_.end() ? MultiPoly(ambient_) : it->second;
}

void DiffForm::add(const FormIndex& index, const MultiPoly& f) {
  if (static_cast<int>(index.size()) != degree_) throw std::invalid_argument("form index has wrong length");
  for (std::size_t k = 0; k < index.size(); ++k) {
    if (index[k] < 0 || index[k] >= static_cast<int>(ambient_.size()))
      throw AmbientError("form index out of range");
    if (k && index[k - 1] >= index[k]) throw std::invalid_argument("form index must be strictly increasing");
  }
  require_same_ambient(ambient_, f.ambient(), "form coefficient");
  if (f.is_zero()) return;
  auto [it, inserted] = coeffs_.try_emplace(index, f);
  if (!inserted) {
    it->second += f;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

std::vector<MultiPoly> DiffForm::one_form_coefficients() const {
  if (degree_ != 1) throw std::invalid_argument("not a 1-form");
  std::vector<MultiPoly> out(ambient_.size(), MultiPoly(ambient_));
  for (const auto& [idx, f] : coeffs_) out[static_cast<std::size_t>(idx[0])] = f;
  return out;
}

DiffForm DiffForm::operator-() const {
  DiffForm out(ambient_, degree_);
  for (const auto& [idx, f] : coeffs_) out.add(idx, -f);
  return out;
}

DiffForm operator+(const DiffForm& a, const DiffForm& b) {
  require_same_ambient(a.ambient_, b.ambient_, "form add");
  if (a.degree_ != b.degree_) throw std::invalid_argument("form add: degree mismatch");
  DiffForm out = a;
  for (const auto& [idx, f] : b.coeffs_) out.add(idx, f);
  return out;
}

DiffForm operator-(const DiffForm& a, const DiffForm& b) { return a + (-b); }

DiffForm operator*(const MultiPoly& f, const DiffForm& w) {
  DiffForm out(w.ambient_, w.degree_);
  for (const auto& [idx, g] : w.coeffs_) out.add(idx, f * g);
  return out;
}

std::string DiffForm::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, f] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << f.str() << ")";
    for (std::size_t k = 0; k < idx.size(); ++k) os << (k ? "^d" : "*d") << ambient_.name(static_cast<std::size_t>(idx[k]));
  }
  return os.str();
}

// Calculus

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  require_same_ambient(x.ambient(), y.ambient(), "lie_bracket");
  std::vector<MultiPoly> out;
  out.reserve(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out.push_back(x.apply(y[j]) - y.apply(x[j]));
  return {x.ambient(), std::move(out)};
}

DiffForm exterior_derivative(const DiffForm& w) {
  if (w.degree() >= static_cast<int>(w.ambient().size()))
    throw std::invalid_argument("exterior_derivative: degree overflow");
  DiffForm out(w.ambient(), w.degree() + 1);
  for (const auto& [idx, f] : w.coefficients()) {
    for (std::size_t j = 0; j < w.ambient().size(); ++j) {
      const int jj = static_cast<int>(j);
      if (std::find(idx.begin(), idx.end(), jj) != idx.end()) continue;
      MultiPoly g = differentiate(f, j);
      if (g.is_zero()) continue;
      // dx_j moves past every index smaller than j.
      const auto before = std::count_if(idx.begin(), idx.end(), [jj](int i) { return i < jj; });
      FormIndex merged = idx;
      merged.insert(std::lower_bound(merged.begin(), merged.end(), jj), jj);
      out.add(merged, before % 2 ? -g : g);
    }
  }
  return out;
}

DiffForm interior_product(const VectorField& x, const DiffForm& w) {
  require_same_ambient(x.ambient(), w.ambient(), "interior_product");
  if (w.degree() < 1) throw std::invalid_argument("interior_product: degree 0 input");
  DiffForm out(w.ambient(), w.degree() - 1);
  for (const auto& [idx, f] : w.coefficients()) {
    for (std::size_t m = 0; m < idx.size(); ++m) {
      const MultiPoly& xc = x[static_cast<std::size_t>(idx[m])];
      if (xc.is_zero()) continue;
      FormIndex rest = idx;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(m));
      MultiPoly term = xc * f;
      out.add(rest, m % 2 ? -term : term);
    }
  }
  return out;
}

DiffForm wedge(const DiffForm& a, const DiffForm& b) {
  require_same_ambient(a.ambient(), b.ambient(), "wedge");
  if (a.degree() + b.degree() > static_cast<int>(a.ambient().size()))
    throw std::invalid_argument("wedge: degree overflow");
  DiffForm out(a.ambient(), a.degree() + b.degree());
  for (const auto& [ia, fa] : a.coefficients())
    for (const auto& [ib, fb] : b.coefficients()) {
      bool overlap = false;
      int inversions = 0;
      for (int i : ia)
        for (int j : ib) {
          if (i == j) overlap = true;
          if (i > j) ++inversions;
        }
      if (overlap) continue;
      FormIndex merged = ia;
      merged.insert(merged.end(), ib.begin(), ib.end());
      std::sort(merged.begin(), merged.end());
      MultiPoly prod = fa * fb;
      out.add(merged, inversions % 2 ? -prod : prod);
    }
  return out;
}

MultiPoly pair(const DiffForm& w, const VectorField& x) {
  if (w.degree() != 1) throw std::invalid_argument("pair: expects a 1-form");
  return interior_product(x, w).coefficient({});
}

// Generic rank

MultiPoly determinant(const PolyMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) throw std::invalid_argument("determinant of empty matrix");
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("determinant of non-square matrix");
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  MultiPoly acc(m[0][0].ambient());
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    PolyMatrix minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<MultiPoly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    MultiPoly term = m[0][j] * determinant(minor);
    if (j % 2)
      acc -= term;
    else
      acc += term;
  }
  return acc;
}

namespace {

PolyMatrix submatrix(const PolyMatrix& m, const std::vector<Eigen::Index>& rows,
                     const std::vector<Eigen::Index>& cols) {
  PolyMatrix out;
  for (auto r : rows) {
    std::vector<MultiPoly> row;
    for (auto c : cols) row.push_back(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
    out.push_back(std::move(row));
  }
  return out;
}

ExactPoint sample_point(std::mt19937_64& rng, std::size_t n, int height) {
  std::uniform_int_distribution<int> num(-height, height), den(1, height);
  ExactPoint p(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    p(static_cast<Eigen::Index>(i)) = GaussianRational(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
  return p;
}

constexpr int kRankSamples = 5;

}  // namespace

PivotSelection generic_pivots(const PolyMatrix& m) {
  if (m.empty() || m.front().empty()) throw std::invalid_argument("generic_rank: empty matrix");
  const std::size_t rows = m.size(), cols = m.front().size();
  const Ambient& amb = m.front().front().ambient();
  const Eigen::Index full = static_cast<Eigen::Index>(std::min(rows, cols));

  // Fixed seed: results must not depend on call order.
  std::mt19937_64 rng(0x5eedu);
  PivotSelection best;
  for (int attempt = 0; attempt < kRankSamples && best.rank < full; ++attempt) {
    const ExactPoint p = sample_point(rng, amb.size(), 7 + 4 * attempt);
    MatrixX<GaussianRational> values(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
      if (m[i].size() != cols) throw std::invalid_argument("generic_rank: ragged matrix");
      for (std::size_t j = 0; j < cols; ++j)
        values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = evaluate(m[i][j], p);
    }
    PivotSelection sel = exact_pivots(values);
    if (sel.rank > best.rank || attempt == 0) best = std::move(sel);
  }

  // Escalate: a nonvanishing bordered minor raises the rank by one.
  while (best.rank < full) {
    bool raised = false;
    for (std::size_t i = 0; i < rows && !raised; ++i) {
      if (std::find(best.rows.begin(), best.rows.end(), static_cast<Eigen::Index>(i)) != best.rows.end()) continue;
      for (std::size_t j = 0; j < cols && !raised; ++j) {
        if (std::find(best.cols.begin(), best.cols.end(), static_cast<Eigen::Index>(j)) != best.cols.end()) continue;
        auto r = best.rows, c = best.cols;
        r.push_back(static_cast<Eigen::Index>(i));
        c.push_back(static_cast<Eigen::Index>(j));
        if (!determinant(submatrix(m, r, c)).is_zero()) {
          best.rows = std::move(r);
          best.cols = std::move(c);
          ++best.rank;
          raised = true;
        }
      }
    }
    if (!raised) break;
  }
  return best;
}

int generic_rank(const PolyMatrix& rows) { return static_cast<int>(generic_pivots(rows).rank); }

namespace {

PolyMatrix as_rows(std::span<const VectorField> fields) {
  PolyMatrix rows;
  for (const auto& f : fields) {
    require_same_ambient(f.ambient(), fields.front().ambient(), "frame");
    rows.push_back(f.components());
  }
  return rows;
}

}  // namespace

int generic_rank(std::span<const VectorField> fields) {
  if (fields.empty()) throw std::invalid_argument("generic_rank: empty field list");
  return generic_rank(as_rows(fields));
}

bool in_span(const VectorField& x, std::span<const VectorField> frame) {
  if (x.is_zero()) return true;
  if (frame.empty()) return false;
  std::vector<VectorField> extended(frame.begin(), frame.end());
  extended.push_back(x);
  return generic_rank(extended) == generic_rank(frame);
}

DistributionFrame::DistributionFrame(std::vector<VectorField> fields, int claimed_rank)
    : fields_(std::move(fields)), rank_(claimed_rank) {
  if (fields_.empty()) throw std::invalid_argument("distribution frame needs at least one field");
  if (claimed_rank > static_cast<int>(fields_.size()))
    throw std::invalid_argument("claimed rank exceeds number of fields");
  const int actual = generic_rank(fields_);
  if (actual != claimed_rank)
    throw std::invalid_argument("frame has generic rank " + std::to_string(actual) + ", claimed " +
                                std::to_string(claimed_rank));
}

DiffForm annihilator(std::span<const VectorField> fields) {
  if (fields.empty()) throw std::invalid_argument("annihilator: no fields");
  const Ambient& amb = fields.front().ambient();
  const std::size_t n = amb.size();
  if (fields.size() + 1 != n) throw std::invalid_argument("annihilator: need n-1 fields in dimension n");
  PolyMatrix rows = as_rows(fields);
  std::vector<MultiPoly> coeffs;
  for (std::size_t j = 0; j < n; ++j) {
    PolyMatrix minor;
    for (const auto& row : rows) {
      std::vector<MultiPoly> r;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) r.push_back(row[k]);
      minor.push_back(std::move(r));
    }
    MultiPoly d = determinant(minor);
    coeffs.push_back(j % 2 ? -d : d);
  }
  return DiffForm::one_form(amb, coeffs);
}

namespace {

std::vector<MultiPoly> normalize_polys(std::vector<MultiPoly> polys) {
  if (polys.empty()) return polys;
  MultiPoly g(polys.front().ambient());
  for (const auto& p : polys) g = gcd(g, p);
  if (g.is_zero()) return polys;
  GaussianRational lead;
  for (auto& p : polys) {
    if (p.is_zero()) continue;
    p = *divide_exact(p, g);
    if (lead.is_zero()) lead = p.leading_coefficient();
  }
  const GaussianRational inv = GaussianRational(1) / lead;
  for (auto& p : polys) p *= inv;
  return polys;
}

}  // namespace

VectorField normalize(const VectorField& x) { return {x.ambient(), normalize_polys(x.components())}; }

DiffForm normalize(const DiffForm& w) {
  std::vector<FormIndex> keys;
  std::vector<MultiPoly> polys;
  for (const auto& [idx, f] : w.coefficients()) {
    keys.push_back(idx);
    polys.push_back(f);
  }
  polys = normalize_polys(std::move(polys));
  DiffForm out(w.ambient(), w.degree());
  for (std::size_t k = 0; k < keys.size(); ++k) out.add(keys[k], polys[k]);
  return out;
}

namespace {

std::vector<VectorField> with_brackets(const std::vector<VectorField>& fields) {
  std::vector<VectorField> out = fields;
  for (std::size_t i = 0; i < fields.size(); ++i)
    for (std::size_t j = i + 1; j < fields.size(); ++j) {
      VectorField b = lie_bracket(fields[i], fields[j]);
      if (!b.is_zero()) out.push_back(std::move(b));
    }
  return out;
}

std::vector<VectorField> independent_subset(const std::vector<VectorField>& fields) {
  const PivotSelection sel = generic_pivots(as_rows(fields));
  std::vector<Eigen::Index> rows = sel.rows;
  std::sort(rows.begin(), rows.end());
  std::vector<VectorField> out;
  for (auto r : rows) out.push_back(fields[static_cast<std::size_t>(r)]);
  return out;
}

}  // namespace

bool check_even_contact(const DistributionFrame& e) {
  if (e.ambient().size() != 4 || e.rank() != 3)
    throw std::invalid_argument("check_even_contact: needs a rank-3 frame in dimension 4");
  return generic_rank(with_brackets(e.fields())) == 4;
}

VectorField characteristic_line_field(const DistributionFrame& e) {
  if (e.ambient().size() != 4 || e.rank() != 3)
    throw std::invalid_argument("characteristic_line_field: needs a rank-3 frame in dimension 4");
  const Ambient& amb = e.ambient();
  const std::vector<VectorField> basis = independent_subset(e.fields());
  const DiffForm alpha = annihilator(basis);
  const DiffForm dalpha = exterior_derivative(alpha);

  // One row per coefficient of iota_W d(alpha) ^ alpha, plus alpha(W).
  std::vector<DiffForm> columns;
  for (std::size_t j = 0; j < 4; ++j)
    columns.push_back(wedge(interior_product(VectorField::coordinate(amb, j), dalpha), alpha));
  PolyMatrix system;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      std::vector<MultiPoly> row;
      for (const auto& col : columns) row.push_back(col.coefficient({a, b}));
      system.push_back(std::move(row));
    }
  system.push_back(alpha.one_form_coefficients());

  const PivotSelection sel = generic_pivots(system);
  if (sel.rank != 3)
    throw std::runtime_error("characteristic_line_field: kernel has dimension " + std::to_string(4 - sel.rank) +
                             ", expected a unique line");
  std::vector<Eigen::Index> rows = sel.rows;
  std::sort(rows.begin(), rows.end());
  std::vector<MultiPoly> w;
  for (std::size_t j = 0; j < 4; ++j) {
    PolyMatrix minor;
    for (auto r : rows) {
      std::vector<MultiPoly> row;
      for (std::size_t k = 0; k < 4; ++k)
        if (k != j) row.push_back(system[static_cast<std::size_t>(r)][k]);
      minor.push_back(std::move(row));
    }
    MultiPoly d = determinant(minor);
    w.push_back(j % 2 ? -d : d);
  }
  VectorField result = normalize(VectorField(amb, std::move(w)));

  for (const auto& row : system) {
    MultiPoly residual(amb);
    for (std::size_t j = 0; j < 4; ++j) residual += row[j] * result[j];
    if (!residual.is_zero()) throw std::runtime_error("characteristic_line_field: kernel vector check failed");
  }
  if (!in_span(result, basis)) throw std::runtime_error("characteristic_line_field: W not contained in E");
  for (const auto& f : basis)
    if (!in_span(lie_bracket(result, f), basis))
      throw std::runtime_error("characteristic_line_field: [W, E] not contained in E");
  return result;
}

EngelCheck check_engel(const DistributionFrame& d) {
  if (d.ambient().size() != 4 || d.rank() != 2)
    throw std::invalid_argument("check_engel: needs a rank-2 frame in dimension 4");
  const Ambient& amb = d.ambient();
  const std::vector<VectorField> d_basis = independent_subset(d.fields());

  std::vector<VectorField> e_fields = with_brackets(d_basis);
  const int e_rank = generic_rank(e_fields);
  if (e_rank != 3) return EngelFailure{"rank-3", "D + [D,D] has generic rank " + std::to_string(e_rank)};
  std::vector<VectorField> e_basis = d_basis;
  for (std::size_t k = d_basis.size(); k < e_fields.size() && e_basis.size() < 3; ++k)
    if (!in_span(e_fields[k], e_basis)) e_basis.push_back(e_fields[k]);
  DistributionFrame e(e_basis, 3);

  const int ee_rank = generic_rank(with_brackets(e_basis));
  if (ee_rank != 4) return EngelFailure{"rank-4", "E + [E,E] has generic rank " + std::to_string(ee_rank)};

  VectorField w = VectorField::zero(amb);
  try {
    w = characteristic_line_field(e);
  } catch (const std::runtime_error& err) {
    return EngelFailure{"characteristic", err.what()};
  }
  if (!in_span(w, d_basis)) return EngelFailure{"W-in-D", "characteristic field " + w.str() + " is not in D"};

  DiffForm e_form = normalize(annihilator(e_basis));
  std::vector<DiffForm> d_forms{e_form};
  for (std::size_t k = 0; k < 4 && d_forms.size() < 2; ++k) {
    std::vector<VectorField> trial = d_basis;
    trial.push_back(VectorField::coordinate(amb, k));
    if (generic_rank(trial) != 3) continue;
    DiffForm candidate = normalize(annihilator(trial));
    if (generic_rank(PolyMatrix{e_form.one_form_coefficients(), candidate.one_form_coefficients()}) == 2)
      d_forms.push_back(std::move(candidate));
  }
  if (d_forms.size() != 2) return EngelFailure{"forms", "could not complete the annihilator of D"};
  return EngelFlag{std::move(w), d, std::move(e), std::move(d_forms), std::move(e_form)};
}

DistributionFrame standard_engel_frame() {
  const Ambient& amb = standard_ambient();
  const MultiPoly zero(amb);
  VectorField dw = VectorField::coordinate(amb, "w");
  VectorField xst(amb, {zero, MultiPoly::constant(amb, 1), MultiPoly::variable(amb, "z"), MultiPoly::variable(amb, "w")});
  return DistributionFrame({dw, xst}, 2);
}

}  // namespace engel
