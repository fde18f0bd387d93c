#include "sstqp/conic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace sstqp {

LinExpr LinExpr::var(int index, double coef) {
  LinExpr e;
  e.terms.emplace_back(index, coef);
  return e;
}

LinExpr& LinExpr::operator+=(const LinExpr& o) {
  terms.insert(terms.end(), o.terms.begin(), o.terms.end());
  constant += o.constant;
  return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& o) {
  for (const auto& [i, c] : o.terms) terms.emplace_back(i, -c);
  constant -= o.constant;
  return *this;
}

LinExpr& LinExpr::operator*=(double s) {
  for (auto& t : terms) t.second *= s;
  constant *= s;
  return *this;
}

double LinExpr::evaluate(const Vector& point) const {
  double v = constant;
  for (const auto& [i, c] : terms) v += c * point[i];
  return v;
}

void LinExpr::compact() {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<int, double>> out;
  for (const auto& t : terms) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
    } else {
      out.push_back(t);
    }
  }
  std::erase_if(out, [](const auto& t) { return t.second == 0.0; });
  terms = std::move(out);
}

LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
LinExpr operator*(double s, LinExpr a) { return a *= s; }

int VarBlock::size() const {
  return kind == BlockKind::kSymmetric ? rows * (rows + 1) / 2 : rows * cols;
}

int VarBlock::index(int i, int j) const {
  if (i < 0 || j < 0 || i >= rows || j >= cols) {
    throw DimensionMismatch("block '" + name + "': index out of range");
  }
  switch (kind) {
    case BlockKind::kVector:
      return offset + i;
    case BlockKind::kMatrix:
      return offset + i * cols + j;
    case BlockKind::kSymmetric: {
      if (i > j) std::swap(i, j);
      // row-major upper triangle
      return offset + i * rows - i * (i - 1) / 2 + (j - i);
    }
  }
  return -1;
}

PsdConstraint::PsdConstraint(std::string n, int d)
    : name(std::move(n)), dim(d), upper(static_cast<std::size_t>(d) * (d + 1) / 2) {}

LinExpr& PsdConstraint::at(int i, int j) {
  if (i > j) std::swap(i, j);
  return upper[static_cast<std::size_t>(i * dim - i * (i - 1) / 2 + (j - i))];
}

const LinExpr& PsdConstraint::at(int i, int j) const {
  if (i > j) std::swap(i, j);
  return upper[static_cast<std::size_t>(i * dim - i * (i - 1) / 2 + (j - i))];
}

VarBlock ConicModel::add_block(std::string name, BlockKind kind, int rows, int cols) {
  if (rows < 1 || cols < 1) throw InvalidArgument("block '" + name + "': empty");
  if (has_block(name)) throw InvalidArgument("block '" + name + "' declared twice");
  VarBlock b{std::move(name), kind, rows, cols, num_vars_};
  num_vars_ += b.size();
  blocks_.push_back(b);
  return b;
}

VarBlock ConicModel::add_vector(std::string name, int n) {
  return add_block(std::move(name), BlockKind::kVector, n, 1);
}

VarBlock ConicModel::add_symmetric(std::string name, int n) {
  return add_block(std::move(name), BlockKind::kSymmetric, n, n);
}

VarBlock ConicModel::add_matrix(std::string name, int rows, int cols) {
  return add_block(std::move(name), BlockKind::kMatrix, rows, cols);
}

const VarBlock& ConicModel::block(std::string_view name) const {
  for (const auto& b : blocks_) {
    if (b.name == name) return b;
  }
  throw InvalidArgument("no block named '" + std::string(name) + "'");
}

bool ConicModel::has_block(std::string_view name) const {
  return std::any_of(blocks_.begin(), blocks_.end(),
                     [&](const VarBlock& b) { return b.name == name; });
}

void ConicModel::check_expr(const LinExpr& e) const {
  for (const auto& [i, c] : e.terms) {
    if (i < 0 || i >= num_vars_) throw DimensionMismatch("expression references undeclared variable");
    if (!std::isfinite(c)) throw NonFinite("expression coefficient not finite");
  }
  if (!std::isfinite(e.constant)) throw NonFinite("expression constant not finite");
}

void ConicModel::set_objective(LinExpr objective) {
  check_expr(objective);
  objective.compact();
  objective_ = std::move(objective);
}

void ConicModel::add_equality(std::string family, LinExpr expr) {
  check_expr(expr);
  expr.compact();
  equalities_.push_back({std::move(family), std::move(expr)});
}

void ConicModel::add_nonneg(std::string family, LinExpr expr) {
  check_expr(expr);
  expr.compact();
  inequalities_.push_back({std::move(family), std::move(expr)});
}

void ConicModel::add_psd(PsdConstraint block) {
  if (block.dim < 1) throw InvalidArgument("psd block '" + block.name + "': empty");
  for (auto& e : block.upper) {
    check_expr(e);
    e.compact();
  }
  psd_.push_back(std::move(block));
}

std::size_t ConicModel::count_equalities(std::string_view family) const {
  return static_cast<std::size_t>(std::count_if(
      equalities_.begin(), equalities_.end(),
      [&](const LinearConstraint& c) { return c.family == family; }));
}

std::size_t ConicModel::count_inequalities(std::string_view family) const {
  return static_cast<std::size_t>(std::count_if(
      inequalities_.begin(), inequalities_.end(),
      [&](const LinearConstraint& c) { return c.family == family; }));
}

// ---------------------------------------------------------------------------
// Text interchange

namespace {

const char* kind_name(BlockKind k) {
  switch (k) {
    case BlockKind::kVector:
      return "vector";
    case BlockKind::kSymmetric:
      return "symmetric";
    case BlockKind::kMatrix:
      return "matrix";
  }
  return "?";
}

BlockKind parse_kind(const std::string& s) {
  if (s == "vector") return BlockKind::kVector;
  if (s == "symmetric") return BlockKind::kSymmetric;
  if (s == "matrix") return BlockKind::kMatrix;
  throw InvalidArgument("conic text: unknown block kind '" + s + "'");
}

void check_token(const std::string& s) {
  if (s.empty() || std::any_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); })) {
    throw InvalidArgument("conic text: names must be non-empty and free of whitespace");
  }
}

void write_expr(std::ostream& os, const LinExpr& e) {
  os << e.terms.size() << ' ' << e.constant;
  for (const auto& [i, c] : e.terms) os << ' ' << i << ' ' << c;
}

LinExpr read_expr(std::istream& is) {
  std::size_t k = 0;
  LinExpr e;
  if (!(is >> k >> e.constant)) throw InvalidArgument("conic text: malformed expression");
  e.terms.resize(k);
  for (auto& [i, c] : e.terms) {
    if (!(is >> i >> c)) throw InvalidArgument("conic text: malformed term");
  }
  return e;
}

}  // namespace

void ConicModel::write_text(std::ostream& os) const {
  const auto old_precision = os.precision(std::numeric_limits<double>::max_digits10);
  os << "sstqp-conic 1\n";
  os << "vars " << num_vars_ << '\n';
  for (const auto& b : blocks_) {
    check_token(b.name);
    os << "block " << b.name << ' ' << kind_name(b.kind) << ' ' << b.rows << ' '
       << b.cols << ' ' << b.offset << '\n';
  }
  os << "objective ";
  write_expr(os, objective_);
  os << '\n';
  for (const auto& c : equalities_) {
    check_token(c.family);
    os << "eq " << c.family << ' ';
    write_expr(os, c.expr);
    os << '\n';
  }
  for (const auto& c : inequalities_) {
    check_token(c.family);
    os << "ge " << c.family << ' ';
    write_expr(os, c.expr);
    os << '\n';
  }
  for (const auto& p : psd_) {
    check_token(p.name);
    os << "psd " << p.name << ' ' << p.dim << '\n';
    for (int i = 0; i < p.dim; ++i) {
      for (int j = i; j < p.dim; ++j) {
        os << "entry " << i << ' ' << j << ' ';
        write_expr(os, p.at(i, j));
        os << '\n';
      }
    }
  }
  os << "end\n";
  os.precision(old_precision);
}

ConicModel ConicModel::read_text(std::istream& is) {
  std::string tag;
  int version = 0;
  if (!(is >> tag >> version) || tag != "sstqp-conic" || version != 1) {
    throw InvalidArgument("conic text: bad header");
  }
  ConicModel m;
  int declared = -1;
  std::optional<PsdConstraint> pending;
  auto flush = [&] {
    if (pending) {
      m.add_psd(std::move(*pending));
      pending.reset();
    }
  };
  while (is >> tag) {
    if (tag == "vars") {
      is >> declared;
    } else if (tag == "block") {
      std::string name, kind;
      int rows = 0, cols = 0, offset = 0;
      is >> name >> kind >> rows >> cols >> offset;
      const VarBlock b = m.add_block(name, parse_kind(kind), rows, cols);
      if (b.offset != offset) throw InvalidArgument("conic text: block offsets out of order");
    } else if (tag == "objective") {
      m.set_objective(read_expr(is));
    } else if (tag == "eq" || tag == "ge") {
      flush();
      std::string family;
      is >> family;
      LinExpr e = read_expr(is);
      if (tag == "eq") {
        m.add_equality(family, std::move(e));
      } else {
        m.add_nonneg(family, std::move(e));
      }
    } else if (tag == "psd") {
      flush();
      std::string name;
      int dim = 0;
      is >> name >> dim;
      pending.emplace(name, dim);
    } else if (tag == "entry") {
      if (!pending) throw InvalidArgument("conic text: entry outside psd block");
      int i = 0, j = 0;
      is >> i >> j;
      if (i < 0 || j < i || j >= pending->dim) throw InvalidArgument("conic text: bad entry index");
      pending->at(i, j) = read_expr(is);
    } else if (tag == "end") {
      flush();
      if (declared != m.num_vars()) throw InvalidArgument("conic text: variable count mismatch");
      return m;
    } else {
      throw InvalidArgument("conic text: unknown record '" + tag + "'");
    }
    if (!is) throw InvalidArgument("conic text: truncated record '" + tag + "'");
  }
  throw InvalidArgument("conic text: missing 'end'");
}

// ---------------------------------------------------------------------------

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kUnbounded:
      return "unbounded";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kNumericalFailure:
      return "numerical_failure";
  }
  return "?";
}

Vector extract_vector(const ConicModel& m, const Vector& point, std::string_view name) {
  const VarBlock& b = m.block(name);
  if (b.kind != BlockKind::kVector) throw InvalidArgument("block is not a vector");
  return point.segment(b.offset, b.rows);
}

SymMatrix extract_symmetric(const ConicModel& m, const Vector& point, std::string_view name) {
  const VarBlock& b = m.block(name);
  if (b.kind != BlockKind::kSymmetric) throw InvalidArgument("block is not symmetric");
  SymMatrix s(b.rows);
  for (int i = 0; i < b.rows; ++i) {
    for (int j = i; j < b.rows; ++j) s.set(i, j, point[b.index(i, j)]);
  }
  return s;
}

Matrix extract_matrix(const ConicModel& m, const Vector& point, std::string_view name) {
  const VarBlock& b = m.block(name);
  if (b.kind != BlockKind::kMatrix) throw InvalidArgument("block is not a full matrix");
  Matrix r(b.rows, b.cols);
  for (int i = 0; i < b.rows; ++i) {
    for (int j = 0; j < b.cols; ++j) r(i, j) = point[b.index(i, j)];
  }
  return r;
}

}  // namespace sstqp
