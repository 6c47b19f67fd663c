#include "gradval/monomialization.hpp"

#include "gradval/error.hpp"

#include <algorithm>
#include <set>

namespace gradval {

namespace {

std::string step_name(const STransform &s) {
  return "S(" + std::to_string(s.i) + "," + std::to_string(s.j) + "," +
         std::to_string(s.k) + "," + std::to_string(s.l) + ")";
}

} // namespace

MonomialExtension apply_s_transform(const MonomialExtension &me,
                                    const STransform &step) {
  const auto &bs = me.blocks;
  if (step.i < 1 || step.k < 1 || step.i > bs.rank() || step.k > bs.rank())
    fail(ErrorCode::IndexError, step_name(step) + ": block index out of range");
  if (step.i >= step.k)
    fail(ErrorCode::NotAlongValuation,
         step_name(step) + ": requires i < k so that the transform is along the valuation");
  if (step.j < 1 || step.j > bs.t()[step.i - 1])
    fail(ErrorCode::IndexError, step_name(step) + ": j outside block i");
  if (step.l < 1 || step.l > bs.s()[step.k - 1])
    fail(ErrorCode::IndexError, step_name(step) + ": (k,l) is not a T-index");

  const std::size_t target = bs.flat_index(step.i - 1, step.j - 1);
  const std::size_t source = bs.flat_index(step.k - 1, step.l - 1);
  MonomialExtension out = me;
  out.A.add_col_multiple(source, target, Int(1));
  out.y_values[target] = me.y_values[target] - me.y_values[source];
  if (out.y_values[target].sign() <= 0)
    fail(ErrorCode::NotAlongValuation,
         step_name(step) + ": new value " + out.y_values[target].to_string() +
             " is not positive");
  return out;
}

MonomialExtension apply_r_transform(const MonomialExtension &me,
                                    const RTransform &step) {
  const std::size_t n = me.size();
  if (step.row >= n)
    fail(ErrorCode::IndexError, "R-side transform row out of range");
  MonomialExtension out = me;
  auto xvals = induced_x_values(me);
  auto value = xvals[step.row];
  for (const auto &[w, c] : step.factors) {
    if (w >= n || w == step.row)
      fail(ErrorCode::IndexError, "R-side transform factor index invalid");
    if (c < 0)
      fail(ErrorCode::NotAlongValuation, "R-side transform exponent is negative");
    out.A.add_row_multiple(step.row, w, Int(-c));
    value = value - xvals[w].scaled(Rational(c));
  }
  if (value.sign() <= 0)
    fail(ErrorCode::NotAlongValuation,
         "R-side transform of x_" + std::to_string(step.row + 1) +
             " leaves value " + value.to_string());
  for (std::size_t j = 0; j < n; ++j)
    if (out.A(step.row, j) < 0)
      fail(ErrorCode::NotAlongValuation,
           "R-side transform of x_" + std::to_string(step.row + 1) +
               " produces a negative exponent");
  out.unit_markers[step.row] = true;
  return out;
}

MonomialExtension apply_rescale(const MonomialExtension &me, const Rescale &step) {
  if (step.variable >= me.size())
    fail(ErrorCode::IndexError, "rescale variable out of range");
  MonomialExtension out = me;
  out.unit_markers[step.variable] = false;
  return out;
}

MonomialExtension apply_step(const MonomialExtension &me,
                             const TransformStep &step) {
  return std::visit(
      [&](const auto &s) -> MonomialExtension {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, STransform>)
          return apply_s_transform(me, s);
        else if constexpr (std::is_same_v<T, RTransform>)
          return apply_r_transform(me, s);
        else
          return apply_rescale(me, s);
      },
      step);
}

namespace {

struct Lift {
  IntVector b; // aligned with the later T-columns
  IntVector c; // aligned with the later T-rows (same index set)
};

// Lexicographically smallest b >= 0 (blocks in order, positions in order)
// such that h + b = sum_w c_w A(w, .) on the later T-columns with c >= 0.
// A restricted to the later T-rows is block upper triangular, so c is
// determined block by block.
class LiftSearch {
public:
  LiftSearch(const MonomialExtension &me, std::size_t block, IntVector h,
             Int bound)
      : me_(me), h_(std::move(h)), bound_(std::move(bound)) {
    const auto &bs = me.blocks;
    later_ = bs.t_indices_after(block);
    for (std::size_t u = block + 1; u < bs.rank(); ++u) {
      Group g;
      for (std::size_t idx : bs.t_indices_of_block(u)) {
        auto pos = std::find(later_.begin(), later_.end(), idx) - later_.begin();
        g.positions.push_back(static_cast<std::size_t>(pos));
      }
      auto idx = bs.t_indices_of_block(u);
      ExactMatrix Gt = me.A.submatrix(idx, idx).transpose();
      g.det = determinant(Gt);
      if (g.det == 0)
        fail(ErrorCode::NotTriangularForm, "singular diagonal block");
      g.adj = adjugate(Gt);
      groups_.push_back(std::move(g));
    }
    b_.assign(later_.size(), Int(0));
    c_.assign(later_.size(), Int(0));
  }

  std::optional<Lift> run() {
    if (search(0))
      return Lift{b_, c_};
    return std::nullopt;
  }

private:
  struct Group {
    std::vector<std::size_t> positions;
    Int det;
    ExactMatrix adj;
  };

  bool search(std::size_t gi) {
    if (gi == groups_.size())
      return true;
    const Group &g = groups_[gi];
    const std::size_t s = g.positions.size();
    // Contribution of the already fixed rows to this block's columns.
    IntVector base(s, Int(0));
    for (std::size_t a = 0; a < s; ++a) {
      const std::size_t col = later_[g.positions[a]];
      base[a] = h_[g.positions[a]];
      for (std::size_t p = 0; p < later_.size(); ++p)
        if (c_[p] != 0)
          base[a] -= c_[p] * me_.A(later_[p], col);
    }
    IntVector b(s, Int(0));
    IntVector rhs(s);
    for (;;) {
      for (std::size_t a = 0; a < s; ++a)
        rhs[a] = base[a] + b[a];
      IntVector num = g.adj * rhs;
      bool ok = true;
      IntVector cu(s);
      for (std::size_t a = 0; a < s && ok; ++a) {
        if (num[a] % g.det != 0) {
          ok = false;
          break;
        }
        cu[a] = num[a] / g.det;
        ok = cu[a] >= 0;
      }
      if (ok) {
        for (std::size_t a = 0; a < s; ++a) {
          b_[g.positions[a]] = b[a];
          c_[g.positions[a]] = cu[a];
        }
        if (search(gi + 1))
          return true;
        for (std::size_t a = 0; a < s; ++a) {
          b_[g.positions[a]] = 0;
          c_[g.positions[a]] = 0;
        }
      }
      // Next b in lexicographic order.
      std::size_t k = s;
      while (k > 0) {
        --k;
        if (b[k] < bound_) {
          b[k] += 1;
          break;
        }
        b[k] = 0;
        if (k == 0)
          return false;
      }
      if (s == 0)
        return false;
    }
  }

  const MonomialExtension &me_;
  IntVector h_;
  Int bound_;
  std::vector<std::size_t> later_;
  std::vector<Group> groups_;
  IntVector b_, c_;
};

bool is_unit_row(const ExactMatrix &A, std::size_t m) {
  for (std::size_t j = 0; j < A.cols(); ++j)
    if (A(m, j) != (j == m ? 1 : 0))
      return false;
  return true;
}

} // namespace

MonomializationTrace strong_monomialize(const MonomialExtension &me,
                                        const MonomializeOptions &options) {
  auto diags = validate(me);
  if (!diags.empty())
    fail(ErrorCode::NotTriangularForm,
         "input is not in triangular form: " + diags.front().message);

  const auto &bs = me.blocks;
  const std::size_t n = me.size();
  Int bound = options.exponent_bound;
  if (bound <= 0)
    bound = 8 * std::max(me.A.max_abs_entry(), Int(1));

  std::size_t non_t = 0;
  for (std::size_t m = 0; m < n; ++m)
    if (!bs.is_t_index(m))
      ++non_t;
  const Int step_limit = Int(non_t) * (Int(bs.t_indices().size()) * bound + 2);

  MonomializationTrace trace{me, {}, me};
  MonomialExtension &cur = trace.final;
  auto emit = [&](TransformStep step) {
    cur = apply_step(cur, step);
    trace.steps.push_back(std::move(step));
    if (Int(trace.steps.size()) > step_limit)
      fail(ErrorCode::StepBoundExceeded,
           "monomialization exceeded " + to_string(step_limit) + " steps");
  };

  for (std::size_t m = 0; m < n; ++m) {
    if (bs.is_t_index(m))
      continue;
    if (is_unit_row(cur.A, m)) {
      if (cur.unit_markers[m])
        emit(Rescale{m});
      continue;
    }
    const std::size_t block = bs.block_of(m);
    auto later = bs.t_indices_after(block);
    IntVector h;
    for (std::size_t col : later)
      h.push_back(cur.A(m, col));

    auto lift = LiftSearch(cur, block, h, bound).run();
    if (!lift)
      fail(ErrorCode::NoNonnegativeLift,
           "no nonnegative exponents within bound " + to_string(bound) +
               " clear row " + std::to_string(m + 1));

    for (std::size_t p = 0; p < later.size(); ++p) {
      const std::size_t col = later[p];
      for (Int t = 0; t < lift->b[p]; ++t)
        emit(STransform{block + 1, bs.position(m) + 1, bs.block_of(col) + 1,
                        bs.position(col) + 1});
    }
    RTransform r{m, {}};
    for (std::size_t p = 0; p < later.size(); ++p)
      if (lift->c[p] != 0)
        r.factors.emplace_back(later[p], lift->c[p]);
    emit(std::move(r));
    emit(Rescale{m});
  }

  if (!is_ssm_form(cur) || !validate(cur).empty())
    fail(ErrorCode::Inconsistent, "monomialization ended outside strong monomial form");
  return trace;
}

void verify_replay(const MonomializationTrace &trace) {
  MonomialExtension cur = trace.initial;
  for (std::size_t s = 0; s < trace.steps.size(); ++s) {
    try {
      cur = apply_step(cur, trace.steps[s]);
    } catch (const Error &e) {
      fail(ErrorCode::ReplayMismatch,
           "step " + std::to_string(s + 1) + " failed to apply: " + e.what());
    }
  }
  if (!(cur == trace.final))
    fail(ErrorCode::ReplayMismatch, "replayed extension differs from the recorded final form");
  if (!is_ssm_form(cur) || !validate(cur).empty())
    fail(ErrorCode::ReplayMismatch, "recorded final form is not in strong monomial form");
}

std::optional<std::size_t> CosetSystem::index_of(const IntVector &sigma) const {
  auto it = std::lower_bound(lambda.points.begin(), lambda.points.end(), sigma);
  if (it == lambda.points.end() || *it != sigma)
    return std::nullopt;
  return static_cast<std::size_t>(it - lambda.points.begin());
}

std::vector<IntVector> quotient_elements(const ExactMatrix &A) {
  ExactMatrix At = A.transpose();
  auto snf = smith_normal_form(At);
  const std::size_t n = At.rows();
  if (snf.rank() < n)
    fail(ErrorCode::SingularLattice, "quotient is infinite");
  ExactMatrix Uinv = adjugate(snf.U);
  if (determinant(snf.U) < 0)
    for (std::size_t i = 0; i < n; ++i)
      Uinv.negate_row(i);
  IntVector d = snf.diagonal();
  std::vector<IntVector> out;
  IntVector k(n, Int(0));
  for (;;) {
    out.push_back(Uinv * k);
    std::size_t i = n;
    bool wrapped = true;
    while (i > 0) {
      --i;
      if (k[i] + 1 < d[i]) {
        k[i] += 1;
        wrapped = false;
        break;
      }
      k[i] = 0;
    }
    if (wrapped)
      break;
  }
  return out;
}

CosetSystem coset_system(const SSMForm &ssm, const CosetOptions &options) {
  return coset_system(ssm.extension(), options);
}

CosetSystem coset_system(const MonomialExtension &me, const CosetOptions &options) {
  if (!is_ssm_form(me))
    fail(ErrorCode::InvalidExtension,
         "extension is not in strong monomial form: some non-T row is not x_m = y_m");
  const std::size_t n = me.size();
  auto adj = adjoint_relations(me);
  auto xvals = induced_x_values(me);

  ValueGroup star = options.phi_nu_star
                        ? *options.phi_nu_star
                        : make_value_group(me.shape, me.y_values);
  ValueGroup base = options.phi_nu ? *options.phi_nu
                                   : make_value_group(me.shape, xvals);

  std::shared_ptr<const QuotientMap> q;
  try {
    q = std::make_shared<const QuotientMap>(star, base);
  } catch (const Error &err) {
    if (err.code() == ErrorCode::InfiniteIndex)
      fail(ErrorCode::IndexHypothesisFailed,
           std::string("Φ_ν has infinite index in Φ_ν*: ") + err.what());
    if (err.code() == ErrorCode::NotASubgroup)
      fail(ErrorCode::QuotientHypothesisFailed,
           std::string("Φ_ν is not contained in Φ_ν*: ") + err.what());
    throw;
  }

  // The map b -> sum b_j nu*(y_j) must land in Φ_ν* and send A^t Z^n into Φ_ν.
  for (std::size_t j = 0; j < n; ++j)
    if (!q->in_big(me.y_values[j]))
      fail(ErrorCode::QuotientHypothesisFailed,
           "value of y_" + std::to_string(j + 1) + " is outside Φ_ν*");
  for (std::size_t i = 0; i < n; ++i)
    if (!q->in_small(xvals[i]))
      fail(ErrorCode::QuotientHypothesisFailed,
           "value of x_" + std::to_string(i + 1) + " = " + xvals[i].to_string() +
               " is outside Φ_ν, so A^t Z^n does not map into Φ_ν");

  auto value_of = [&](const IntVector &b) {
    auto v = OrderedGroupElement::zero(me.shape);
    for (std::size_t j = 0; j < n; ++j)
      if (b[j] != 0)
        v = v + me.y_values[j].scaled(Rational(b[j]));
    return v;
  };

  // Injectivity on Z^n / A^t Z^n, by enumerating the whole quotient.
  auto elements = quotient_elements(me.A);
  std::vector<std::pair<CosetLabel, std::size_t>> seen;
  for (std::size_t k = 0; k < elements.size(); ++k)
    seen.emplace_back(q->label(value_of(elements[k])), k);
  std::sort(seen.begin(), seen.end(),
            [](const auto &a, const auto &b) { return a.first.residues < b.first.residues; });
  for (std::size_t k = 1; k < seen.size(); ++k)
    if (seen[k].first == seen[k - 1].first) {
      auto fmt = [](const IntVector &v) {
        std::string s = "(";
        for (std::size_t i = 0; i < v.size(); ++i)
          s += (i ? "," : "") + to_string(v[i]);
        return s + ")";
      };
      fail(ErrorCode::QuotientHypothesisFailed,
           "classes " + fmt(elements[seen[k - 1].second]) + " and " +
               fmt(elements[seen[k].second]) +
               " of Z^n/A^t Z^n map to the same coset of Φ_ν");
    }

  if (adj.e != q->index())
    fail(ErrorCode::IndexHypothesisFailed,
         "|det A| = " + to_string(adj.e) + " but [Φ_ν* : Φ_ν] = " +
             to_string(q->index()));
  if (quotient_invariants(me.A.transpose()) != q->invariants())
    fail(ErrorCode::QuotientHypothesisFailed,
         "invariant factors of Z^n/A^t Z^n differ from those of Φ_ν*/Φ_ν");

  ExactMatrix E = options.E ? *options.E : me.A;
  if (E.rows() != n || E.cols() != n)
    fail(ErrorCode::DimensionMismatch, "E must be n x n");
  if (options.E) {
    // A = Q E with Q integral and unimodular.
    Int detE = determinant(E);
    if (abs_value(detE) != adj.e)
      fail(ErrorCode::InvalidExtension, "|det E| differs from |det A|");
    ExactMatrix Qnum = me.A * adjugate(E);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (Qnum(i, j) % detE != 0)
          fail(ErrorCode::InvalidExtension, "A is not Q E for an integral Q");
  }

  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < n; ++i)
    rows.push_back(E.row(i));

  CosetSystem cs{parallelepiped_points(rows), {}, {}, adj.e, q->invariants(),
                 base, star, me.A, q};
  for (const auto &sigma : cs.lambda.points) {
    cs.values.push_back(value_of(sigma));
    cs.labels.push_back(q->label(cs.values.back()));
  }
  std::set<IntVector> distinct;
  for (const auto &l : cs.labels)
    distinct.insert(l.residues);
  if (distinct.size() != cs.labels.size() || Int(cs.labels.size()) != adj.e)
    fail(ErrorCode::Inconsistent,
         "parallelepiped points do not give e distinct coset labels");
  return cs;
}

} // namespace gradval
