#include "kbfe/check.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>

#include "numeric.hpp"

namespace kbfe {

namespace {

/// Index arithmetic for x + y and x - y over a domain.
///
/// Domain indices factor as free_index * |T| + torsion_index. When the free
/// box is small enough the sums are read from precomputed tables; otherwise
/// they go through PointIndex.
class PairIndexer {
 public:
  explicit PairIndexer(const Domain& d) : points_(d) {
    const Group& g = d.group();
    Group free_part(g.rank(), {});
    Group torsion_part(0, g.torsion());
    Domain fd = d.is_full() ? Domain::full(free_part) : Domain::box(free_part, d.radius());
    Domain td = Domain::full(torsion_part);
    nf_ = fd.size();
    nt_ = td.size();
    if (nf_ * nf_ > (std::size_t{1} << 22)) return;
    tabulated_ = true;
    PointIndex fi(fd), ti(td);
    fsum_.resize(nf_ * nf_);
    fdiff_.resize(nf_ * nf_);
    for (std::size_t a = 0; a < nf_; ++a)
      for (std::size_t b = 0; b < nf_; ++b) {
        fsum_[a * nf_ + b] = fi.combine(a, 1, b, 1);
        fdiff_[a * nf_ + b] = fi.combine(a, 1, b, -1);
      }
    tsum_.resize(nt_ * nt_);
    tdiff_.resize(nt_ * nt_);
    for (std::size_t a = 0; a < nt_; ++a)
      for (std::size_t b = 0; b < nt_; ++b) {
        tsum_[a * nt_ + b] = ti.combine(a, 1, b, 1);
        tdiff_[a * nt_ + b] = ti.combine(a, 1, b, -1);
      }
  }

  std::size_t size() const noexcept { return points_.size(); }

  std::int64_t sum(std::size_t x, std::size_t y) const {
    if (!tabulated_) return points_.combine(x, 1, y, 1);
    return join(fsum_[(x / nt_) * nf_ + y / nt_], tsum_[(x % nt_) * nt_ + y % nt_]);
  }
  std::int64_t diff(std::size_t x, std::size_t y) const {
    if (!tabulated_) return points_.combine(x, 1, y, -1);
    return join(fdiff_[(x / nt_) * nf_ + y / nt_], tdiff_[(x % nt_) * nt_ + y % nt_]);
  }
  std::int64_t neg(std::size_t x) const { return points_.negate(x); }

  bool tabulated() const noexcept { return tabulated_; }
  std::size_t free_count() const noexcept { return nf_; }
  std::size_t torsion_count() const noexcept { return nt_; }
  const std::int64_t* free_sum_row(std::size_t a) const { return fsum_.data() + a * nf_; }
  const std::int64_t* free_diff_row(std::size_t a) const { return fdiff_.data() + a * nf_; }
  const std::int64_t* torsion_sum_row(std::size_t a) const { return tsum_.data() + a * nt_; }
  const std::int64_t* torsion_diff_row(std::size_t a) const { return tdiff_.data() + a * nt_; }

 private:
  std::int64_t join(std::int64_t f, std::int64_t t) const {
    return f < 0 ? -1 : f * static_cast<std::int64_t>(nt_) + t;
  }

  PointIndex points_;
  bool tabulated_ = false;
  std::size_t nf_ = 0, nt_ = 0;
  std::vector<std::int64_t> fsum_, fdiff_, tsum_, tdiff_;
};

/// Integer linear combinations of real table entries, exact when possible.
///
/// Exact data is packed into 64-bit numerators when they are small and kept
/// as GMP integers otherwise; only approximate data is summed in doubles.
class LinearView {
 public:
  struct Sum {
    __int128 n = 0;
    double d = 0.0;
    mpz_class big;
  };

  explicit LinearView(const RealTable& t) {
    const std::vector<Real>& vals = t.values();
    exact_ = pack_exact(vals, num_, den_);
    if (!exact_) big_ = pack_exact_big(vals, big_num_, den_);
    if (!exact_ && !big_) {
      dbl_.reserve(vals.size());
      for (const auto& v : vals) dbl_.push_back(v.value());
    }
  }

  void add(Sum& s, std::int64_t idx, long c) const {
    const auto i = static_cast<std::size_t>(idx);
    if (exact_)
      s.n += static_cast<__int128>(c) * num_[i];
    else if (big_)
      s.big += c * big_num_[i];
    else
      s.d += static_cast<double>(c) * dbl_[i];
  }

  bool equal(const Sum& a, const Sum& b, double tol) const {
    if (exact_) return a.n == b.n;
    if (big_) return a.big == b.big;
    return std::fabs(a.d - b.d) <= tol;
  }

  std::string str(const Sum& s) const {
    if (exact_) return Real(mpq_class(to_mpz(s.n), den_)).str();
    if (big_) return Real(mpq_class(s.big, den_)).str();
    return format12(s.d);
  }

 private:
  bool exact_ = false;
  bool big_ = false;
  std::vector<std::int64_t> num_;
  std::vector<mpz_class> big_num_;
  mpz_class den_{1};
  std::vector<double> dbl_;
};

/// Products of multiplicative table entries, exact when possible.
///
/// Exact mode keeps log-moduli over a common denominator and turns over a
/// common denominator (mod that denominator). Float mode multiplies complex
/// doubles, and also tracks summed logs for the log-modulus metric.
class ProductView {
 public:
  struct Prod {
    bool zero = false;
    __int128 log = 0;
    __int128 turn = 0;
    std::complex<double> z{1.0, 0.0};
    double logd = 0.0;
    mpz_class big_log, big_turn;
  };

  explicit ProductView(std::vector<const FuncTable*> tables) {
    std::vector<Real> logs, turns;
    bool all_exact = true;
    for (const auto* t : tables) {
      offsets_.push_back(zero_.size());
      for (const auto& v : t->values()) {
        zero_.push_back(v.is_zero());
        logs.push_back(v.is_zero() ? Real(0) : v.log_modulus());
        turns.push_back(v.is_zero() ? Real(0) : v.turn());
        all_exact = all_exact && v.exact();
      }
    }
    positive_ = true;
    for (const auto* t : tables) positive_ = positive_ && t->kind() == Kind::positive;
    exact_ = all_exact && pack_exact(logs, log_, log_den_) && pack_exact(turns, turn_, turn_den_);
    if (exact_) {
      if (!turn_den_.fits_slong_p()) exact_ = false;
      turn_mod_ = exact_ ? turn_den_.get_si() : 1;
    }
    if (!exact_ && all_exact) {
      big_ = true;
      pack_exact_big(logs, big_log_, log_den_);
      pack_exact_big(turns, big_turn_, turn_den_);
    }
    if (!exact_ && !big_) {
      for (std::size_t i = 0; i < logs.size(); ++i) {
        logd_.push_back(logs[i].value());
        z_.push_back(zero_[i] ? std::complex<double>(0.0, 0.0)
                              : std::polar(std::exp(logs[i].value()), 2 * std::numbers::pi * turns[i].value()));
      }
    }
  }

  void mul(Prod& p, std::size_t table, std::int64_t idx) const {
    const std::size_t k = offsets_[table] + static_cast<std::size_t>(idx);
    if (zero_[k]) p.zero = true;
    if (exact_) {
      p.log += log_[k];
      p.turn += turn_[k];
    } else if (big_) {
      p.big_log += big_log_[k];
      p.big_turn += big_turn_[k];
    } else {
      p.z *= z_[k];
      p.logd += logd_[k];
    }
  }

  void mul(Prod& p, const Prod& q) const {
    if (q.zero) p.zero = true;
    if (exact_) {
      p.log += q.log;
      p.turn += q.turn;
    } else if (big_) {
      p.big_log += q.big_log;
      p.big_turn += q.big_turn;
    } else {
      p.z *= q.z;
      p.logd += q.logd;
    }
  }

  bool equal(const Prod& a, const Prod& b, double tol) const {
    if (exact_) {
      if (a.zero || b.zero) return a.zero == b.zero;
      return a.log == b.log && (a.turn - b.turn) % turn_mod_ == 0;
    }
    if (big_) {
      if (a.zero || b.zero) return a.zero == b.zero;
      const mpz_class dt = a.big_turn - b.big_turn;
      return a.big_log == b.big_log && mpz_divisible_p(dt.get_mpz_t(), turn_den_.get_mpz_t()) != 0;
    }
    if (positive_) {
      if (a.zero || b.zero) return a.zero == b.zero;
      return std::fabs(a.logd - b.logd) <= tol;
    }
    return std::abs(a.z - b.z) <= tol;
  }

  bool packed() const noexcept { return exact_; }
  bool any_zero() const { return std::find(zero_.begin(), zero_.end(), true) != zero_.end(); }
  std::int64_t log_at(std::size_t table, std::size_t idx) const { return log_[offsets_[table] + idx]; }
  std::int64_t turn_at(std::size_t table, std::size_t idx) const { return turn_[offsets_[table] + idx]; }
  long turn_mod() const noexcept { return turn_mod_; }

  std::string str(const Prod& p) const {
    if (p.zero) return "0";
    if (exact_) {
      __int128 t = p.turn % turn_mod_;
      return Value::polar(Real(mpq_class(to_mpz(p.log), log_den_)), Real(mpq_class(to_mpz(t), turn_den_))).str();
    }
    if (big_) {
      const Real turn = Real(mpq_class(p.big_turn, turn_den_)).frac();
      return Value::polar(Real(mpq_class(p.big_log, log_den_)), turn).str();
    }
    if (positive_) return format12(std::exp(p.logd));
    return "(" + format12(p.z.real()) + "," + format12(p.z.imag()) + ")";
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<bool> zero_;
  bool exact_ = false;
  bool big_ = false;
  bool positive_ = false;
  std::vector<std::int64_t> log_, turn_;
  std::vector<mpz_class> big_log_, big_turn_;
  mpz_class log_den_{1}, turn_den_{1};
  long turn_mod_ = 1;
  std::vector<double> logd_;
  std::vector<std::complex<double>> z_;
};

void require_same_domain(const Domain& a, const Domain& b) {
  if (!(a == b)) throw InvalidArgument("tables are defined on different domains");
}

CheckReport start(std::string equation) {
  CheckReport r;
  r.equation = std::move(equation);
  return r;
}

void fail(CheckReport& r, std::vector<std::pair<std::string, Element>> points, std::string lhs, std::string rhs) {
  r.holds = false;
  r.witness = Witness{std::move(points), std::move(lhs), std::move(rhs)};
}

template <class T>
CheckReport coset_constant_impl(const T& t, int modulus, double tol, const Element* only, auto&& same, auto&& show) {
  if (modulus != 2 && modulus != 4) throw InvalidArgument("coset modulus must be 2 or 4");
  CheckReport r = start("constant on X^(" + std::to_string(modulus) + ")-cosets");
  const Domain& d = t.domain();
  const Group& g = d.group();
  std::vector<std::int64_t> first(g.coset_count(modulus), -1);
  const std::optional<CosetIndex> target =
      only ? std::optional<CosetIndex>(g.coset_index(*only, modulus)) : std::nullopt;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const Element x = d.at(i);
    const CosetIndex c = g.coset_index(x, modulus);
    if (target && c != *target) continue;
    auto& f = first[g.coset_ordinal(c)];
    ++r.pairs_conceivable;
    ++r.pairs_checked;
    if (f < 0) {
      f = static_cast<std::int64_t>(i);
      continue;
    }
    const auto fi = static_cast<std::size_t>(f);
    if (!same(t[fi], t[i], tol)) {
      fail(r, {{"x", d.at(fi)}, {"y", x}}, show(t[fi]), show(t[i]));
      return r;
    }
  }
  return r;
}

/// Exact zero-free check_kb over packed integers. Fills the pair counts and
/// returns the first failing (x, y) in domain order.
std::optional<std::pair<std::size_t, std::size_t>> kb_exact_kernel(const PairIndexer& pi, const ProductView& pv,
                                                                   CheckReport& r) {
  const std::size_t n = pi.size(), nf = pi.free_count(), nt = pi.torsion_count();
  const std::int64_t m = pv.turn_mod();
  std::vector<std::int64_t> lf(n), lg(n), tf(n), tg(n), lx(n), tx(n), ly(n), ty(n);
  for (std::size_t i = 0; i < n; ++i) {
    lf[i] = pv.log_at(0, i);
    lg[i] = pv.log_at(1, i);
    tf[i] = pv.turn_at(0, i) % m;
    tg[i] = pv.turn_at(1, i) % m;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto ni = static_cast<std::size_t>(pi.neg(i));
    lx[i] = lf[i] + lg[i];
    tx[i] = (tf[i] + tg[i]) % m;
    ly[i] = lf[i] + lg[ni];
    ty[i] = (tf[i] + tg[ni]) % m;
  }
  std::uint64_t checked = 0;
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t xf = x / nt, xt = x % nt;
    const std::int64_t* fs = pi.free_sum_row(xf);
    const std::int64_t* fd = pi.free_diff_row(xf);
    const std::int64_t* ts = pi.torsion_sum_row(xt);
    const std::int64_t* td = pi.torsion_diff_row(xt);
    for (std::size_t yf = 0; yf < nf; ++yf) {
      const std::int64_t sf = fs[yf], df = fd[yf];
      if (sf < 0 || df < 0) continue;
      const auto sbase = static_cast<std::size_t>(sf) * nt, dbase = static_cast<std::size_t>(df) * nt;
      const std::size_t ybase = yf * nt;
      for (std::size_t yt = 0; yt < nt; ++yt) {
        const std::size_t s = sbase + static_cast<std::size_t>(ts[yt]);
        const std::size_t t = dbase + static_cast<std::size_t>(td[yt]);
        const std::size_t y = ybase + yt;
        const bool log_ok = lf[s] + lg[t] == lx[x] + ly[y];
        const bool turn_ok = (tf[s] + tg[t] - tx[x] - ty[y]) % m == 0;
        if (!(log_ok && turn_ok)) {
          r.pairs_checked = checked + 1;
          return std::make_pair(x, y);
        }
        ++checked;
      }
    }
  }
  r.pairs_checked = checked;
  return std::nullopt;
}

}  // namespace

RealTable delta(const RealTable& t, const Element& h) {
  const Domain& d = t.domain();
  const Group& g = d.group();
  if (!g.owns(h)) throw InvalidArgument("step " + h.str() + " does not belong to " + g.str());
  Domain out = d;
  if (!d.is_full()) {
    std::vector<Coord> r = d.radius();
    for (std::size_t j = 0; j < r.size(); ++j) {
      r[j] -= h[j] < 0 ? -h[j] : h[j];
      if (r[j] < 0) throw InvalidArgument("difference step " + h.str() + " leaves no point of the window");
    }
    out = Domain::box(g, r);
  }
  return RealTable::generate(out, Kind::real, [&](const Element& x) { return t.at(g.add(x, h)) - t.at(x); });
}

CheckReport check_polynomial(const RealTable& t, int n, double tol) {
  if (n < 0) throw InvalidArgument("polynomial degree must be nonnegative");
  CheckReport r = start("Delta_h^" + std::to_string(n + 1) + " T(x) = 0");
  const Domain& d = t.domain();
  PointIndex pi(d);
  LinearView lv(t);
  const std::size_t size = d.size();
  r.pairs_conceivable = static_cast<std::uint64_t>(size) * size;
  std::vector<long> binom(static_cast<std::size_t>(n) + 2, 1);
  for (int j = 1; j <= n + 1; ++j) binom[static_cast<std::size_t>(j)] = binom[static_cast<std::size_t>(j) - 1] * (n + 2 - j) / j;
  for (std::size_t x = 0; x < size; ++x) {
    for (std::size_t h = 0; h < size; ++h) {
      LinearView::Sum s;
      bool fits = true;
      for (int j = 0; j <= n + 1 && fits; ++j) {
        std::int64_t idx = pi.combine(x, 1, h, j);
        if (idx < 0) {
          fits = false;
          break;
        }
        long c = binom[static_cast<std::size_t>(j)] * (((n + 1 - j) % 2) ? -1 : 1);
        lv.add(s, idx, c);
      }
      if (!fits) continue;
      ++r.pairs_checked;
      if (!lv.equal(s, {}, tol)) {
        fail(r, {{"x", d.at(x)}, {"h", d.at(h)}}, lv.str(s), "0");
        return r;
      }
    }
  }
  return r;
}

CheckReport check_eq5(const RealTable& t, double tol) {
  CheckReport r = start("Delta_2k Delta_h^2 T(x) = 0");
  const Domain& d = t.domain();
  PointIndex pi(d);
  LinearView lv(t);
  const std::size_t size = d.size();
  r.pairs_conceivable = static_cast<std::uint64_t>(size) * size * size;
  for (std::size_t x = 0; x < size; ++x) {
    for (std::size_t h = 0; h < size; ++h) {
      const std::int64_t xh = pi.combine(x, 1, h, 1);
      const std::int64_t xhh = pi.combine(x, 1, h, 2);
      if (xh < 0 || xhh < 0) continue;
      for (std::size_t k = 0; k < size; ++k) {
        const std::int64_t a = pi.combine3(x, 1, k, 2, h, 2);
        const std::int64_t b = pi.combine3(x, 1, k, 2, h, 1);
        const std::int64_t c = pi.combine(x, 1, k, 2);
        if (a < 0 || b < 0 || c < 0) continue;
        LinearView::Sum s;
        lv.add(s, a, 1);
        lv.add(s, b, -2);
        lv.add(s, c, 1);
        lv.add(s, xhh, -1);
        lv.add(s, xh, 2);
        lv.add(s, static_cast<std::int64_t>(x), -1);
        ++r.pairs_checked;
        if (!lv.equal(s, {}, tol)) {
          fail(r, {{"x", d.at(x)}, {"h", d.at(h)}, {"k", d.at(k)}}, lv.str(s), "0");
          return r;
        }
      }
    }
  }
  return r;
}

CheckReport check_kb(const FuncTable& f, const FuncTable& g, double tol) {
  require_same_domain(f.domain(), g.domain());
  CheckReport r = start("f(x+y) g(x-y) = f(x) f(y) g(x) g(-y)");
  const Domain& d = f.domain();
  PairIndexer pi(d);
  ProductView pv({&f, &g});
  const std::size_t n = d.size();
  r.pairs_conceivable = static_cast<std::uint64_t>(n) * n;
  if (pv.packed() && !pv.any_zero() && pi.tabulated()) {
    if (auto w = kb_exact_kernel(pi, pv, r)) {
      const auto [x, y] = *w;
      ProductView::Prod lhs, rhs;
      pv.mul(lhs, 0, pi.sum(x, y));
      pv.mul(lhs, 1, pi.diff(x, y));
      pv.mul(rhs, 0, static_cast<std::int64_t>(x));
      pv.mul(rhs, 0, static_cast<std::int64_t>(y));
      pv.mul(rhs, 1, static_cast<std::int64_t>(x));
      pv.mul(rhs, 1, pi.neg(y));
      fail(r, {{"x", d.at(x)}, {"y", d.at(y)}}, pv.str(lhs), pv.str(rhs));
    }
    return r;
  }
  // f(x) g(x) and f(y) g(-y) do not depend on the other variable.
  std::vector<ProductView::Prod> fx(n), fy(n);
  for (std::size_t i = 0; i < n; ++i) {
    pv.mul(fx[i], 0, static_cast<std::int64_t>(i));
    pv.mul(fx[i], 1, static_cast<std::int64_t>(i));
    pv.mul(fy[i], 0, static_cast<std::int64_t>(i));
    pv.mul(fy[i], 1, pi.neg(i));
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const std::int64_t s = pi.sum(x, y);
      if (s < 0) continue;
      const std::int64_t t = pi.diff(x, y);
      if (t < 0) continue;
      ++r.pairs_checked;
      ProductView::Prod lhs;
      pv.mul(lhs, 0, s);
      pv.mul(lhs, 1, t);
      ProductView::Prod rhs = fx[x];
      pv.mul(rhs, fy[y]);
      if (!pv.equal(lhs, rhs, tol)) {
        fail(r, {{"x", d.at(x)}, {"y", d.at(y)}}, pv.str(lhs), pv.str(rhs));
        return r;
      }
    }
  }
  return r;
}

CheckReport check_kb_self(const FuncTable& f, double tol) {
  CheckReport r = check_kb(f, f, tol);
  r.equation = "f(x+y) f(x-y) = f(x)^2 f(y) f(-y)";
  return r;
}

CheckReport check_hermitian(const FuncTable& f, double tol) {
  CheckReport r = start("f(-x) = conj(f(x))");
  const Domain& d = f.domain();
  PointIndex pi(d);
  r.pairs_conceivable = d.size();
  for (std::size_t i = 0; i < d.size(); ++i) {
    const Value& lhs = f[static_cast<std::size_t>(pi.negate(i))];
    const Value rhs = f[i].conj();
    ++r.pairs_checked;
    if (!near(lhs, rhs, tol, Metric::complex)) {
      fail(r, {{"x", d.at(i)}}, lhs.str(), rhs.str());
      return r;
    }
  }
  return r;
}

CheckReport check_sign_eq26(const FuncTable& a, const FuncTable& b) {
  require_same_domain(a.domain(), b.domain());
  CheckReport r = start("a(x+y) b(x-y) = a(x) a(y) b(x) b(y)");
  const Domain& d = a.domain();
  const std::size_t n = d.size();
  std::vector<int> sa(n), sb(n);
  for (std::size_t i = 0; i < n; ++i) {
    sa[i] = a[i].sign_of(1e-12);
    sb[i] = b[i].sign_of(1e-12);
    if (sa[i] == 0 || sb[i] == 0) throw InvalidArgument("sign equation needs +-1 tables");
  }
  PairIndexer pi(d);
  r.pairs_conceivable = static_cast<std::uint64_t>(n) * n;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const std::int64_t s = pi.sum(x, y), t = pi.diff(x, y);
      if (s < 0 || t < 0) continue;
      ++r.pairs_checked;
      const int lhs = sa[static_cast<std::size_t>(s)] * sb[static_cast<std::size_t>(t)];
      const int rhs = sa[x] * sa[y] * sb[x] * sb[y];
      if (lhs != rhs) {
        fail(r, {{"x", d.at(x)}, {"y", d.at(y)}}, std::to_string(lhs), std::to_string(rhs));
        return r;
      }
    }
  return r;
}

CheckReport check_coset_constant(const FuncTable& t, int modulus, double tol) {
  return coset_constant_impl(
      t, modulus, tol, nullptr, [](const Value& a, const Value& b, double e) { return near(a, b, e, Metric::complex); },
      [](const Value& v) { return v.str(); });
}

CheckReport check_coset_constant_at(const FuncTable& t, int modulus, const Element& x, double tol) {
  if (!t.group().owns(x)) throw InvalidArgument("element " + x.str() + " does not belong to " + t.group().str());
  return coset_constant_impl(
      t, modulus, tol, &x, [](const Value& a, const Value& b, double e) { return near(a, b, e, Metric::complex); },
      [](const Value& v) { return v.str(); });
}

CheckReport check_coset_constant(const RealTable& t, int modulus, double tol) {
  return coset_constant_impl(
      t, modulus, tol, nullptr, [](const Real& a, const Real& b, double e) { return a.near(b, e); },
      [](const Real& v) { return v.str(); });
}

CheckReport check_quadratic(const RealTable& p, double tol) {
  CheckReport r = start("P(x+y) + P(x-y) = 2 P(x) + 2 P(y)");
  const Domain& d = p.domain();
  PairIndexer pi(d);
  LinearView lv(p);
  const std::size_t n = d.size();
  r.pairs_conceivable = static_cast<std::uint64_t>(n) * n;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const std::int64_t s = pi.sum(x, y), t = pi.diff(x, y);
      if (s < 0 || t < 0) continue;
      ++r.pairs_checked;
      LinearView::Sum lhs, rhs;
      lv.add(lhs, s, 1);
      lv.add(lhs, t, 1);
      lv.add(rhs, static_cast<std::int64_t>(x), 2);
      lv.add(rhs, static_cast<std::int64_t>(y), 2);
      if (!lv.equal(lhs, rhs, tol)) {
        fail(r, {{"x", d.at(x)}, {"y", d.at(y)}}, lv.str(lhs), lv.str(rhs));
        return r;
      }
    }
  return r;
}

CheckReport check_cauchy(const RealTable& l, double tol) {
  CheckReport r = start("l(x+y) = l(x) + l(y)");
  const Domain& d = l.domain();
  PairIndexer pi(d);
  LinearView lv(l);
  const std::size_t n = d.size();
  r.pairs_conceivable = static_cast<std::uint64_t>(n) * n;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const std::int64_t s = pi.sum(x, y);
      if (s < 0) continue;
      ++r.pairs_checked;
      LinearView::Sum lhs, rhs;
      lv.add(lhs, s, 1);
      lv.add(rhs, static_cast<std::int64_t>(x), 1);
      lv.add(rhs, static_cast<std::int64_t>(y), 1);
      if (!lv.equal(lhs, rhs, tol)) {
        fail(r, {{"x", d.at(x)}, {"y", d.at(y)}}, lv.str(lhs), lv.str(rhs));
        return r;
      }
    }
  return r;
}

CheckReport check_character(const FuncTable& alpha, double tol) {
  CheckReport r = start("|alpha(x)| = 1, alpha(x+y) = alpha(x) alpha(y)");
  const Domain& d = alpha.domain();
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!near(alpha[i].modulus(), Value::one(), tol, Metric::complex)) {
      r.pairs_conceivable = r.pairs_checked = i + 1;
      fail(r, {{"x", d.at(i)}}, "|alpha(x)| = " + alpha[i].modulus().str(), "1");
      return r;
    }
  }
  PairIndexer pi(d);
  ProductView pv({&alpha});
  r.pairs_conceivable = static_cast<std::uint64_t>(n) * n;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const std::int64_t s = pi.sum(x, y);
      if (s < 0) continue;
      ++r.pairs_checked;
      ProductView::Prod lhs, rhs;
      pv.mul(lhs, 0, s);
      pv.mul(rhs, 0, static_cast<std::int64_t>(x));
      pv.mul(rhs, 0, static_cast<std::int64_t>(y));
      if (!pv.equal(lhs, rhs, tol)) {
        fail(r, {{"x", d.at(x)}, {"y", d.at(y)}}, pv.str(lhs), pv.str(rhs));
        return r;
      }
    }
  return r;
}

}  // namespace kbfe
