#include "tpsp/pascal.hpp"

#include <random>
#include <sstream>

namespace tpsp {

namespace {

std::string where(const char* what, const ExactMatrix& lhs, const ExactMatrix& rhs) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
    return std::string(what) + ": shape " + std::to_string(lhs.rows()) + "x" + std::to_string(lhs.cols()) + " vs " +
           std::to_string(rhs.rows()) + "x" + std::to_string(rhs.cols());
  }
  const auto d = first_difference(lhs, rhs);
  if (!d) return {};
  const auto [r, c] = *d;
  return std::string(what) + " at (" + std::to_string(r) + "," + std::to_string(c) + "): " + lhs.at(r, c).to_string() +
         " vs " + rhs.at(r, c).to_string();
}

// Z(i, m) = binom(z, i - m) for i >= m.
ExactMatrix z_matrix(const Rational& z, int p, int conductor) {
  ExactMatrix out(p, p, conductor);
  for (int i = 0; i < p; ++i)
    for (int m = 0; m <= i; ++m) out.set(i, m, rational_binomial(z, i - m));
  return out;
}

// M(i, j) = binom(j w, i).
ExactMatrix m_matrix(const Rational& w, int p, int q, int conductor) {
  ExactMatrix out(p, q, conductor);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) out.set(i, j, rational_binomial(Rational(j) * w, i));
  return out;
}

// Intermediate M(n): rows i <= n are binom(j, i), rows below are binom(j-1, n) binom(j w, i-n).
ExactMatrix m_n_matrix(const Rational& w, int n, int p, int q, int conductor) {
  ExactMatrix out(p, q, conductor);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < q; ++j) {
      if (i <= n) {
        out.set(i, j, rational_binomial(Rational(j), i));
      } else {
        out.set(i, j, rational_binomial(Rational(j - 1), n) * rational_binomial(Rational(j) * w, i - n));
      }
    }
  }
  return out;
}

ExactMatrix q_step(const Rational& w, int n, int p, int conductor) {
  ExactMatrix out(p, p, conductor);
  for (int i = 0; i <= n; ++i) out.set(i, i, Rational(1));
  const Rational scale = 1 / (Rational(n + 1) * w);
  out.set(n + 1, n + 1, scale);
  for (int i = n + 2; i < p; ++i) {
    out.set(i, i - 1, Rational(i - 1 - n) * scale - 1);
    out.set(i, i, Rational(i - n) * scale);
  }
  return out;
}

ExactMatrix pascal_rational(int p, int q, int conductor) {
  ExactMatrix out(p, q, conductor);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) out.set(i, j, rational_binomial(Rational(j), i));
  return out;
}

struct EliminationReplay {
  ExactMatrix p;
  std::string failure;
};

// P = Q Q(p-3) ... Q(0), checking P(n) M = M(n) along the way.
EliminationReplay build_p(const Rational& w, int p, int q, int conductor) {
  EliminationReplay out{ExactMatrix::identity(p, conductor), {}};
  if (p < 2) return out;  // a single row of ones is already in final form
  const ExactMatrix m = m_matrix(w, p, q, conductor);
  for (int n = 0; n + 3 <= p; ++n) {
    out.p = q_step(w, n, p, conductor) * out.p;
    if (det(out.p).is_zero()) {
      out.failure = "P(" + std::to_string(n + 1) + ") is singular";
      return out;
    }
    auto msg = where(("P(" + std::to_string(n + 1) + ")M vs M(" + std::to_string(n + 1) + ")").c_str(), out.p * m,
                     m_n_matrix(w, n + 1, p, q, conductor));
    if (!msg.empty()) {
      out.failure = msg;
      return out;
    }
  }
  ExactMatrix last = ExactMatrix::identity(p, conductor);
  last.set(p - 1, p - 1, 1 / (Rational(p - 1) * w));
  out.p = last * out.p;
  return out;
}

// C: (n - s) x n, entry (a, j) = binom(j, s + a) x^(j - s - a) for j >= s + a.
ExactMatrix c_matrix(const CyclotomicScalar& x, int n, int s) {
  ExactMatrix out(n - s, n, x.conductor());
  for (int a = 0; a < n - s; ++a)
    for (int j = s + a; j < n; ++j) out.set(a, j, x.pow(j - s - a) * rational_binomial(Rational(j), s + a));
  return out;
}

Rational random_rational(std::mt19937_64& rng, bool nonzero) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  int a = num(rng);
  while (nonzero && a == 0) a = num(rng);
  Rational r(a, den(rng));
  r.canonicalize();
  return r;
}

CyclotomicScalar random_unit_multiple(std::mt19937_64& rng, int conductor) {
  std::uniform_int_distribution<int> e(0, conductor - 1);
  return CyclotomicScalar::eta_power(conductor, e(rng)) * random_rational(rng, true);
}

void weak_compositions(int n, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    cur.push_back(n);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int first = 0; first <= n; ++first) {
    cur.push_back(first);
    weak_compositions(n - first, parts - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

int PascalSpec::total() const {
  int n = 0;
  for (int b : block_sizes) n += b;
  return n;
}

void check_spec(const PascalSpec& spec) {
  if (spec.k < 1) throw Error(Errc::PreconditionViolated, "k must be positive");
  if (static_cast<int>(spec.block_sizes.size()) != spec.k) {
    throw Error(Errc::PreconditionViolated, "expected " + std::to_string(spec.k) + " block sizes");
  }
  for (int b : spec.block_sizes) {
    if (b < 0) throw Error(Errc::PreconditionViolated, "negative block size");
  }
  if (spec.total() < 1) throw Error(Errc::PreconditionViolated, "N must be at least 1");
  if (spec.w == 0) throw Error(Errc::PreconditionViolated, "w must be nonzero");
  if (spec.conductor() % spec.k != 0) {
    throw Error(Errc::PreconditionViolated, "field conductor " + std::to_string(spec.conductor()) +
                                                " is not a multiple of k = " + std::to_string(spec.k));
  }
}

ExactMatrix build_block(const PascalSpec& spec, int r) {
  check_spec(spec);
  if (r < 0 || r >= spec.k) throw Error(Errc::PreconditionViolated, "block index outside [0, k)");
  const int n = spec.total();
  const int c = spec.conductor();
  const long step = c / spec.k;  // η_k = η_c^(c/k)
  ExactMatrix out(spec.block_sizes[r], n, c);
  for (int p = 0; p < n; ++p) {
    const auto root = CyclotomicScalar::eta_power(c, step * p * r);
    const Rational arg = spec.z + Rational(p) * spec.w;
    for (int i = 0; i < spec.block_sizes[r]; ++i) out.set(i, p, root * rational_binomial(arg, i));
  }
  return out;
}

ExactMatrix build_stacked(const PascalSpec& spec) {
  check_spec(spec);
  ExactMatrix out(0, spec.total(), spec.conductor());
  for (int r = 0; r < spec.k; ++r) out = ExactMatrix::vstack(out, build_block(spec, r));
  return out;
}

Invertibility verify_invertible(const PascalSpec& spec) {
  Invertibility out;
  out.det = det(build_stacked(spec));
  out.invertible = !out.det.is_zero();
  return out;
}

ExactMatrix binomial_block(const CyclotomicScalar& x, const Rational& z, const Rational& w, int p, int q) {
  ExactMatrix out(p, q, x.conductor());
  for (int j = 0; j < q; ++j) {
    const auto xj = x.pow(j);
    for (int i = 0; i < p; ++i) out.set(i, j, xj * rational_binomial(z + Rational(j) * w, i));
  }
  return out;
}

ExactMatrix pascal_prime(const CyclotomicScalar& x, int p, int q) {
  return binomial_block(x, Rational(0), Rational(1), p, q);
}

CheckReport factorization_check(const CyclotomicScalar& x, const Rational& z, const Rational& w, int p, int q) {
  if (p < 1 || q < 1) throw Error(Errc::PreconditionViolated, "p and q must be at least 1");
  if (w == 0) throw Error(Errc::PreconditionViolated, "w must be nonzero");
  if (x.is_zero()) throw Error(Errc::PreconditionViolated, "x must be nonzero");
  const int c = x.conductor();
  const ExactMatrix a = binomial_block(x, z, w, p, q);
  const ExactMatrix zm = z_matrix(z, p, c);
  const ExactMatrix m = m_matrix(w, p, q, c);
  ExactMatrix h(q, q, c);
  for (int j = 0; j < q; ++j) h.set(j, j, x.pow(j));

  if (auto msg = where("A vs ZMH", a, zm * m * h); !msg.empty()) return CheckReport::fail(msg);
  auto replay = build_p(w, p, q, c);
  if (!replay.failure.empty()) return CheckReport::fail(replay.failure);
  if (det(replay.p).is_zero()) return CheckReport::fail("P is singular");
  if (auto msg = where("PM vs binom(j,i)", replay.p * m, pascal_rational(p, q, c)); !msg.empty()) {
    return CheckReport::fail(msg);
  }
  if (auto msg = where("PMH vs A'", replay.p * m * h, pascal_prime(x, p, q)); !msg.empty()) {
    return CheckReport::fail(msg);
  }
  return {};
}

CheckReport two_blocks_check(const CyclotomicScalar& x, const CyclotomicScalar& y, int n, int s, int t) {
  if (x.conductor() != y.conductor()) throw Error(Errc::ConductorMismatch, "x and y live in different fields");
  if (x.is_zero() || y.is_zero()) throw Error(Errc::PreconditionViolated, "x and y must be nonzero");
  if (x == y) throw Error(Errc::PreconditionViolated, "x and y must differ");
  if (t < 0 || s < t || s + t > n) throw Error(Errc::PreconditionViolated, "need 0 <= t <= s and s + t <= n");
  const int c = x.conductor();
  const CyclotomicScalar d = y - x;

  const ExactMatrix top = pascal_prime(x, s, n);
  const ExactMatrix b = ExactMatrix::vstack(top, pascal_prime(y, t, n));
  const ExactMatrix cm = c_matrix(x, n, s);
  const ExactMatrix b_prime = ExactMatrix::vstack(top, pascal_prime(d, t, n - s) * cm);

  const auto rb = rank(b);
  const auto rbp = rank(b_prime);
  const auto rs = rank(ExactMatrix::vstack(b, b_prime));
  if (rb != rbp || rb != rs) {
    return CheckReport::fail("ranks differ: B " + std::to_string(rb) + ", B' " + std::to_string(rbp) + ", stacked " +
                             std::to_string(rs));
  }

  // Q'
  const CyclotomicScalar ratio = y / x;
  const CyclotomicScalar drift = d / x;
  ExactMatrix qp = ExactMatrix::identity(s + t, c);
  for (int i = 0; i < t; ++i)
    for (int j = i; j < s; ++j) qp.set(s + i, j, -(ratio.pow(i) * drift.pow(j - i)) * rational_binomial(Rational(j), i));

  // W from its closed form, and the factorization W = V A(y-x, s, 1, t, n-s).
  ExactMatrix wm(t, n - s, c);
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < n - s; ++j) wm.set(i, j, y.pow(i) * d.pow(s + j - i) * rational_binomial(Rational(s + j), i));
  if (auto msg = where("Q'B vs [A'; WC]", qp * b, ExactMatrix::vstack(top, wm * cm)); !msg.empty()) {
    return CheckReport::fail(msg);
  }
  ExactMatrix v(t, t, c);
  for (int i = 0; i < t; ++i) v.set(i, i, y.pow(i) * d.pow(s - i));
  const ExactMatrix lower_a = binomial_block(d, Rational(s), Rational(1), t, n - s);
  if (auto msg = where("W vs V A(y-x,s,1,t,n-s)", wm, v * lower_a); !msg.empty()) return CheckReport::fail(msg);

  // U = P Z^-1 takes A(y-x, s, 1, t, n-s) to A'(y-x, t, n-s).
  ExactMatrix u(0, 0, c);
  if (t > 0) {
    auto replay = build_p(Rational(1), t, n - s, c);
    if (!replay.failure.empty()) return CheckReport::fail("inner " + replay.failure);
    u = replay.p * inverse(z_matrix(Rational(s), t, c));
    if (auto msg = where("U A vs A'", u * lower_a, pascal_prime(d, t, n - s)); !msg.empty()) {
      return CheckReport::fail(msg);
    }
  }
  const ExactMatrix u_prime_inv = ExactMatrix::block_diagonal(ExactMatrix::identity(s, c), u);
  const ExactMatrix v_prime = ExactMatrix::block_diagonal(ExactMatrix::identity(s, c), v);
  if (auto msg = where("(U')^-1 (V')^-1 Q' B vs B'", u_prime_inv * inverse(v_prime) * qp * b, b_prime);
      !msg.empty()) {
    return CheckReport::fail(msg);
  }
  return {};
}

std::vector<TheoremCase> theorem_sweep(const TheoremSweepOptions& opts, Exec exec) {
  std::mt19937_64 rng(opts.seed);
  std::vector<TheoremCase> cases;
  for (int k = 1; k <= opts.max_k; ++k) {
    for (int n = 1; n <= opts.max_n; ++n) {
      std::vector<std::vector<int>> comps;
      std::vector<int> cur;
      weak_compositions(n, k, cur, comps);
      for (const auto& comp : comps) {
        for (int sample = 0; sample < opts.samples; ++sample) {
          TheoremCase tc;
          tc.spec.k = k;
          tc.spec.block_sizes = comp;
          tc.spec.z = random_rational(rng, false);
          tc.spec.w = random_rational(rng, true);
          cases.push_back(std::move(tc));
        }
      }
    }
  }
  auto run = [&](std::size_t idx) {
    auto& tc = cases[idx];
    try {
      const auto inv = verify_invertible(tc.spec);
      tc.invertible = inv.invertible;
      tc.det = inv.det.to_string();
    } catch (const std::exception& e) {
      tc.error = e.what();
    }
  };
  const auto count = static_cast<std::ptrdiff_t>(cases.size());
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) run(static_cast<std::size_t>(i));
  } else {
    for (std::ptrdiff_t i = 0; i < count; ++i) run(static_cast<std::size_t>(i));
  }
  return cases;
}

std::vector<LemmaCase> lemma_sweep(int instances, int max_dim, std::uint64_t seed, Exec exec) {
  struct Draw {
    bool factorization;
    CyclotomicScalar x, y;
    Rational z, w;
    int p = 0, q = 0;
    int n = 0;
  };
  static const int conductors[] = {1, 3, 4, 6};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_field(0, 3);
  std::uniform_int_distribution<int> dim(1, max_dim);
  std::vector<Draw> draws;
  std::vector<LemmaCase> out;
  for (int rep = 0; rep < instances; ++rep) {
    const int c = conductors[pick_field(rng)];
    Draw f{true, random_unit_multiple(rng, c), {}, random_rational(rng, false), random_rational(rng, true),
           dim(rng), dim(rng), 0};
    std::ostringstream fp;
    fp << "x=" << f.x.to_string() << " z=" << f.z.get_str() << " w=" << f.w.get_str() << " p=" << f.p
       << " q=" << f.q;
    out.push_back({"factorization", fp.str(), {}});
    draws.push_back(std::move(f));

    const int c2 = conductors[pick_field(rng)];
    Draw t{false, random_unit_multiple(rng, c2), random_unit_multiple(rng, c2), {}, {}, 0, 0, 0};
    while (t.x == t.y) t.y = random_unit_multiple(rng, c2);
    const int n = dim(rng);
    std::uniform_int_distribution<int> pick_s(0, n);
    const int s = pick_s(rng);
    std::uniform_int_distribution<int> pick_t(0, std::min(s, n - s));
    t.p = s;
    t.q = pick_t(rng);
    t.n = n;
    std::ostringstream tp;
    tp << "x=" << t.x.to_string() << " y=" << t.y.to_string() << " n=" << n << " s=" << s << " t=" << t.q;
    out.push_back({"two-blocks", tp.str(), {}});
    draws.push_back(std::move(t));
  }
  auto run = [&](std::size_t idx) {
    const auto& d = draws[idx];
    try {
      out[idx].report = d.factorization ? factorization_check(d.x, d.z, d.w, d.p, d.q)
                                        : two_blocks_check(d.x, d.y, d.n, d.p, d.q);
    } catch (const std::exception& e) {
      out[idx].report = CheckReport::fail(e.what());
    }
  };
  const auto count = static_cast<std::ptrdiff_t>(draws.size());
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) run(static_cast<std::size_t>(i));
  } else {
    for (std::ptrdiff_t i = 0; i < count; ++i) run(static_cast<std::size_t>(i));
  }
  return out;
}

}  // namespace tpsp
