#include "gradval/ramification.hpp"

#include "gradval/error.hpp"

namespace gradval {

namespace {

void require_prime_or_zero(const Int &p) {
  if (p < 0 || (p != 0 && mpz_probab_prime_p(p.get_mpz_t(), 30) == 0))
    fail(ErrorCode::InvalidRecord, "residue characteristic " + to_string(p) +
                                       " is neither 0 nor a prime");
}

std::optional<Rational> times(const std::optional<Rational> &a,
                              const std::optional<Rational> &b) {
  if (!a || !b)
    return std::nullopt;
  return Rational(*a * *b);
}

} // namespace

Int ostrowski_defect(const Int &N, const Int &e, const Int &f, const Int &p) {
  if (N < 1 || e < 1 || f < 1)
    fail(ErrorCode::InvalidRecord, "N, e and f must be positive");
  require_prime_or_zero(p);
  const Int ef = e * f;
  if (N % ef != 0)
    fail(ErrorCode::Inconsistent,
         "e f = " + to_string(ef) + " does not divide N = " + to_string(N));
  Int q = N / ef;
  if (p == 0) {
    if (q != 1)
      fail(ErrorCode::Inconsistent,
           "residue characteristic 0 forces N = e f, but N / (e f) = " + to_string(q));
    return 0;
  }
  Int delta = 0;
  while (q % p == 0) {
    q /= p;
    ++delta;
  }
  if (q != 1)
    fail(ErrorCode::Inconsistent,
         "N / (e f) = " + to_string(Int(N / ef)) + " is not a power of " + to_string(p));
  return delta;
}

ExtensionRecord::ExtensionRecord(Int N, Int e, Int f, Int p, std::optional<Int> delta,
                                 std::optional<Rational> d, std::optional<Rational> g,
                                 std::optional<Rational> r)
    : N_(std::move(N)), e_(std::move(e)), f_(std::move(f)), p_(std::move(p)),
      d_(std::move(d)), g_(std::move(g)), r_(std::move(r)) {
  try {
    delta_ = ostrowski_defect(N_, e_, f_, p_);
  } catch (const Error &err) {
    fail(ErrorCode::InvalidRecord, err.what());
  }
  if (delta && *delta != delta_)
    fail(ErrorCode::InvalidRecord, "N = " + to_string(N_) + " is not e f p^" +
                                       to_string(*delta));
  for (const auto *x : {&d_, &g_, &r_})
    if (*x && **x <= 0)
      fail(ErrorCode::InvalidRecord, "d, g and r must be positive");
  if (d_ && g_) {
    Rational ratio = *d_ / *g_;
    if (r_ && *r_ != ratio)
      fail(ErrorCode::InvalidRecord, "r differs from d / g");
    r_ = ratio;
  }
  if (r_ && r_->get_den() != 1)
    fail(ErrorCode::InvalidRecord, "r = " + to_string(*r_) + " is not an integer");
}

ExtensionRecord ExtensionRecord::trivial(const Int &p) {
  return ExtensionRecord(1, 1, 1, p, Int(0), Rational(1), Rational(1), Rational(1));
}

ExtensionRecord compose_tower(const ExtensionRecord &lower, const ExtensionRecord &upper) {
  if (lower.residue_char() != upper.residue_char())
    fail(ErrorCode::CharMismatch, "residue characteristics " +
                                      to_string(lower.residue_char()) + " and " +
                                      to_string(upper.residue_char()) + " differ");
  return ExtensionRecord(lower.degree() * upper.degree(), lower.e() * upper.e(),
                         lower.f() * upper.f(), lower.residue_char(),
                         Int(lower.defect() + upper.defect()), times(lower.d(), upper.d()),
                         times(lower.g(), upper.g()), times(lower.r(), upper.r()));
}

bool unramified_criterion(const ExtensionRecord &rec) {
  if (!rec.r())
    fail(ErrorCode::MissingIndex, "record has no r index");
  return *rec.r() == 1;
}

void check_inertia_indices(const ExtensionRecord &rec, const Int &index_over_base,
                           const Int &index_over_intermediate) {
  if (!rec.r())
    fail(ErrorCode::MissingIndex, "record has no r index");
  if (index_over_base < 1 || index_over_intermediate < 1)
    fail(ErrorCode::InvalidRecord, "indices must be positive");
  Rational ratio(index_over_base, index_over_intermediate);
  ratio.canonicalize();
  if (ratio != *rec.r())
    fail(ErrorCode::Inconsistent, "index ratio " + to_string(ratio) +
                                      " differs from r = " + to_string(*rec.r()));
}

} // namespace gradval
