#include "psl2rc/psl2.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "psl2rc/numbers.hpp"

namespace psl2rc {

namespace {

// Per-q context: both fields, the distinguished generators, the subfield
// embedding GF(q) -> GF(q^2), and the discrete-log table used by the sign
// normalization. Built once per q and shared read-only afterwards.
struct GroupData {
  std::int64_t q = 0;
  std::int64_t p = 0;
  int m = 0;
  Field fq;
  Field fq2;
  FieldElem tau;       // generator of GF(q^2)^x
  FieldElem sigma_q;   // tau^(q+1) pulled back to GF(q); generates GF(q)^x
  FieldElem tau0;      // tau^(q-1), of multiplicative order q+1
  std::vector<std::int32_t> dlog;                     // by element index, base fq.generator()
  std::unordered_map<std::int64_t, std::int64_t> unembed;  // embedded index -> fq index

  GroupData(std::int64_t q_, std::int64_t p_, int m_, Field fq_, Field fq2_)
      : q(q_), p(p_), m(m_), fq(std::move(fq_)), fq2(std::move(fq2_)),
        tau(fq2.zero()), sigma_q(fq.zero()), tau0(fq2.zero()) {}

  FieldElem embed(const FieldElem& e, const FieldElem& root) const {
    FieldElem acc = fq2.zero();
    for (auto it = e.coeffs().rbegin(); it != e.coeffs().rend(); ++it)
      acc = acc * root + fq2.from_int(*it);
    return acc;
  }

  FieldElem pull_back(const FieldElem& big) const {
    auto it = unembed.find(big.index());
    if (it == unembed.end())
      fail(Errc::FieldMismatch, "value does not lie in the embedded subfield");
    return fq.from_index(it->second);
  }
};

// Builds a per-key cache where construction happens outside the map lock, so
// concurrent verification jobs only serialize on the same key.
template <typename T>
std::shared_ptr<const T> cached_build(std::map<std::int64_t, std::shared_future<std::shared_ptr<const T>>>& cache,
                                      std::mutex& mu, std::int64_t key,
                                      std::shared_ptr<const T> (*build)(std::int64_t)) {
  std::shared_future<std::shared_ptr<const T>> fut;
  std::promise<std::shared_ptr<const T>> prom;
  bool builder = false;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) {
      builder = true;
      fut = prom.get_future().share();
      cache.emplace(key, fut);
    } else {
      fut = it->second;
    }
  }
  if (builder) {
    try {
      prom.set_value(build(key));
    } catch (...) {
      prom.set_exception(std::current_exception());
      std::lock_guard<std::mutex> lock(mu);
      cache.erase(key);
    }
  }
  return fut.get();
}

std::shared_ptr<const GroupData> build_group_data(std::int64_t q) {
  std::int64_t p = 0;
  int m = 0;
  if (!prime_power_decompose(q, &p, &m))
    fail(Errc::NotPrimePower, std::to_string(q) + " is not a prime power");
  Field fq = Field::make(p, m);
  Field fq2 = Field::make(p, 2 * m);
  auto data = std::make_shared<GroupData>(q, p, m, fq, fq2);

  data->tau = fq2.generator();
  data->tau0 = pow(data->tau, q - 1);

  // Embedding: the image of x under GF(q) = GF(p)[x]/(mu) -> GF(q^2) is a
  // root of mu; take the first one in enumeration order.
  FieldElem root = fq2.zero();
  bool found = false;
  for (std::int64_t i = 0; i < fq2.size() && !found; ++i) {
    FieldElem cand = fq2.element_at(i);
    FieldElem val = fq2.zero();
    const auto& mod = fq.modulus();
    for (auto itc = mod.rbegin(); itc != mod.rend(); ++itc)
      val = val * cand + fq2.from_int(*itc);
    if (val.is_zero()) {
      root = cand;
      found = true;
    }
  }
  if (!found) fail(Errc::NotPrimePower, "modulus has no root in the quadratic extension");
  for (std::int64_t i = 0; i < q; ++i)
    data->unembed.emplace(data->embed(fq.from_index(i), root).index(), i);

  data->sigma_q = data->pull_back(pow(data->tau, q + 1));

  if (q % 2 == 1) {
    data->dlog.assign(q, -1);
    FieldElem g = fq.generator();
    FieldElem acc = fq.one();
    for (std::int64_t e = 0; e < q - 1; ++e) {
      data->dlog[acc.index()] = static_cast<std::int32_t>(e);
      acc = acc * g;
    }
  }

  return data;
}

std::shared_ptr<const GroupData> group_data(std::int64_t q) {
  static std::mutex mu;
  static std::map<std::int64_t, std::shared_future<std::shared_ptr<const GroupData>>> cache;
  return cached_build<GroupData>(cache, mu, q, build_group_data);
}

bool sign_canonical(const GroupData& ctx, const std::array<FieldElem, 4>& e) {
  for (const auto& v : e) {
    if (v.is_zero()) continue;
    return ctx.dlog[v.index()] < (ctx.q - 1) / 2;
  }
  return true;  // zero matrix; rejected elsewhere
}

}  // namespace

ProjMatrix ProjMatrix::make(const FieldElem& a, const FieldElem& b, const FieldElem& c,
                            const FieldElem& d) {
  const Field& f = a.field();
  if (!f.same_field(b.field()) || !f.same_field(c.field()) || !f.same_field(d.field()))
    fail(Errc::FieldMismatch, "matrix entries from different fields");
  if (a * d - b * c != f.one()) fail(Errc::InvalidMatrix, "determinant must be 1");
  std::array<FieldElem, 4> e{a, b, c, d};
  if (f.size() % 2 == 1) {
    auto ctx = group_data(f.size());
    if (!sign_canonical(*ctx, e))
      for (auto& v : e) v = -v;
  }
  return ProjMatrix(std::move(e));
}

ProjMatrix ProjMatrix::identity(const Field& f) {
  return ProjMatrix::make(f.one(), f.zero(), f.zero(), f.one());
}

ProjMatrix ProjMatrix::operator*(const ProjMatrix& rhs) const {
  const auto& x = entries_;
  const auto& y = rhs.entries_;
  return ProjMatrix::make(x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
                          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]);
}

ProjMatrix ProjMatrix::inverse() const {
  // det = 1, so the adjugate is the inverse.
  return ProjMatrix::make(entries_[3], -entries_[1], -entries_[2], entries_[0]);
}

ProjMatrix ProjMatrix::power(std::int64_t k) const {
  ProjMatrix base = k < 0 ? inverse() : *this;
  if (k < 0) k = -k;
  ProjMatrix acc = ProjMatrix::identity(field());
  while (k > 0) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

bool ProjMatrix::operator==(const ProjMatrix& rhs) const { return entries_ == rhs.entries_; }

bool ProjMatrix::is_identity() const { return *this == ProjMatrix::identity(field()); }

FieldElem ProjMatrix::trace() const { return entries_[0] + entries_[3]; }

std::int64_t ProjMatrix::trace_key() const {
  FieldElem t = trace();
  return std::min(t.index(), (-t).index());
}

std::string ProjMatrix::to_string() const {
  std::ostringstream os;
  os << "[" << entries_[0].to_string() << ", " << entries_[1].to_string() << "; "
     << entries_[2].to_string() << ", " << entries_[3].to_string() << "]";
  return os.str();
}

std::int64_t group_order(std::int64_t q) {
  std::int64_t p = 0;
  int m = 0;
  if (!prime_power_decompose(q, &p, &m))
    fail(Errc::NotPrimePower, std::to_string(q) + " is not a prime power");
  std::int64_t order = q * (q * q - 1);
  return q % 2 == 0 ? order : order / 2;
}

int element_order(const ProjMatrix& g) {
  ProjMatrix acc = g;
  int n = 1;
  while (!acc.is_identity()) {
    acc = acc * g;
    ++n;
  }
  return n;
}

std::vector<ConjugacyClass> class_reps(std::int64_t q) {
  std::int64_t order = group_order(q);  // validates q
  auto ctx = group_data(q);
  const Field& fq = ctx->fq;

  auto make_class = [&](ConjugacyClass::Family family, std::int64_t param, ProjMatrix rep,
                        std::int64_t size, std::string label) {
    ConjugacyClass c{family, param, std::move(rep), size, 0, std::move(label)};
    c.elt_order = element_order(c.rep);
    return c;
  };

  std::vector<ConjugacyClass> out;
  out.push_back(make_class(ConjugacyClass::Family::Identity, 0, ProjMatrix::identity(fq), 1, "I"));

  std::int64_t unipotent_size = q % 2 == 0 ? q * q - 1 : (q * q - 1) / 2;
  out.push_back(make_class(
      ConjugacyClass::Family::UnipotentN, 0,
      ProjMatrix::make(fq.one(), fq.one(), fq.zero(), fq.one()), unipotent_size, "N"));
  if (q % 2 == 1) {
    FieldElem xi = find_nonsquare(fq);
    out.push_back(make_class(
        ConjugacyClass::Family::UnipotentNPrime, 0,
        ProjMatrix::make(fq.one(), xi, fq.zero(), fq.one()), unipotent_size, "N'"));
  }

  // Split classes S(a) = diag(sigma^a, sigma^-a) and nonsplit classes T(b)
  // with trace tau0^b + tau0^(qb); the latter is computed in GF(q^2) and must
  // land in the embedded GF(q).
  auto split_rep = [&](std::int64_t a) {
    FieldElem s = pow(ctx->sigma_q, a);
    return ProjMatrix::make(s, fq.zero(), fq.zero(), s.inverse());
  };
  auto nonsplit_rep = [&](std::int64_t b) {
    FieldElem t_big = pow(ctx->tau0, b) + pow(ctx->tau0, q * b);
    FieldElem t = ctx->pull_back(t_big);
    return ProjMatrix::make(fq.zero(), -fq.one(), fq.one(), t);
  };
  auto add_split = [&](std::int64_t a, std::int64_t size) {
    out.push_back(make_class(ConjugacyClass::Family::Split, a, split_rep(a), size,
                             "S(" + std::to_string(a) + ")"));
  };
  auto add_nonsplit = [&](std::int64_t b, std::int64_t size) {
    out.push_back(make_class(ConjugacyClass::Family::NonSplit, b, nonsplit_rep(b), size,
                             "T(" + std::to_string(b) + ")"));
  };

  if (q % 2 == 0) {
    for (std::int64_t a = 1; a <= q / 2 - 1; ++a) add_split(a, q * (q + 1));
    for (std::int64_t b = 1; b <= q / 2; ++b) add_nonsplit(b, q * (q - 1));
  } else if (q % 4 == 1) {
    for (std::int64_t a = 1; a <= (q - 5) / 4; ++a) add_split(a, q * (q + 1));
    add_split((q - 1) / 4, q * (q + 1) / 2);
    for (std::int64_t b = 1; b <= (q - 1) / 4; ++b) add_nonsplit(b, q * (q - 1));
  } else {
    for (std::int64_t a = 1; a <= (q - 3) / 4; ++a) add_split(a, q * (q + 1));
    for (std::int64_t b = 1; b <= (q - 3) / 4; ++b) add_nonsplit(b, q * (q - 1));
    add_nonsplit((q + 1) / 4, q * (q - 1) / 2);
  }

  std::int64_t total = 0;
  for (const auto& c : out) total += c.size;
  if (total != order) fail(Errc::InvalidMatrix, "class sizes do not sum to the group order");
  return out;
}

namespace {

// Exhaustive machinery: the whole group enumerated as packed integer keys,
// with int32 field tables for speed, plus the conjugacy partition.
struct OracleData {
  std::int64_t q = 0;
  int shift = 0;  // bits per entry in the packed key
  std::vector<std::int32_t> mul, add, neg, inv;
  std::vector<std::uint64_t> keys;  // in enumeration order
  std::unordered_map<std::uint64_t, std::int32_t> id_of;
  std::vector<std::int32_t> class_id;
  struct Orbit {
    std::int32_t rep = 0;  // element id of the smallest key in the orbit
    std::int64_t size = 0;
    int elt_order = 1;
  };
  std::vector<Orbit> orbits;
  std::uint64_t identity_key = 0;
  bool odd = false;
  std::int64_t half = 0;  // (q-1)/2 for odd q
  std::vector<std::int32_t> dlog;

  std::int64_t f_mul(std::int64_t x, std::int64_t y) const { return mul[x * q + y]; }
  std::int64_t f_add(std::int64_t x, std::int64_t y) const { return add[x * q + y]; }

  std::uint64_t pack(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) const {
    return (((static_cast<std::uint64_t>(a) << shift | static_cast<std::uint64_t>(b)) << shift |
             static_cast<std::uint64_t>(c))
            << shift) |
           static_cast<std::uint64_t>(d);
  }
  void unpack(std::uint64_t k, std::int64_t v[4]) const {
    std::uint64_t mask = (std::uint64_t(1) << shift) - 1;
    v[3] = static_cast<std::int64_t>(k & mask);
    v[2] = static_cast<std::int64_t>((k >> shift) & mask);
    v[1] = static_cast<std::int64_t>((k >> 2 * shift) & mask);
    v[0] = static_cast<std::int64_t>((k >> 3 * shift) & mask);
  }

  std::uint64_t normalize_pack(std::int64_t a, std::int64_t b, std::int64_t c,
                               std::int64_t d) const {
    if (odd) {
      std::int64_t first = a != 0 ? a : (b != 0 ? b : (c != 0 ? c : d));
      if (first != 0 && dlog[first] >= half) {
        a = neg[a];
        b = neg[b];
        c = neg[c];
        d = neg[d];
      }
    }
    return pack(a, b, c, d);
  }

  std::uint64_t mat_mul(std::uint64_t x, std::uint64_t y) const {
    std::int64_t u[4], v[4];
    unpack(x, u);
    unpack(y, v);
    std::int64_t a = f_add(f_mul(u[0], v[0]), f_mul(u[1], v[2]));
    std::int64_t b = f_add(f_mul(u[0], v[1]), f_mul(u[1], v[3]));
    std::int64_t c = f_add(f_mul(u[2], v[0]), f_mul(u[3], v[2]));
    std::int64_t d = f_add(f_mul(u[2], v[1]), f_mul(u[3], v[3]));
    return normalize_pack(a, b, c, d);
  }

  std::uint64_t mat_inv(std::uint64_t x) const {
    std::int64_t u[4];
    unpack(x, u);
    return normalize_pack(u[3], neg[u[1]], neg[u[2]], u[0]);
  }

  int order_of(std::uint64_t x) const {
    std::uint64_t acc = x;
    int n = 1;
    while (acc != identity_key) {
      acc = mat_mul(acc, x);
      ++n;
    }
    return n;
  }

  std::uint64_t mat_pow(std::uint64_t x, std::int64_t k) const {
    std::uint64_t acc = identity_key;
    std::uint64_t base = x;
    while (k > 0) {
      if (k & 1) acc = mat_mul(acc, base);
      base = mat_mul(base, base);
      k >>= 1;
    }
    return acc;
  }

  bool element_rational(std::uint64_t x) const {
    std::int32_t cid = class_id[id_of.at(x)];
    int o = order_of(x);
    for (int k = 2; k < o; ++k) {
      if (std::gcd(k, o) != 1) continue;
      if (class_id[id_of.at(mat_pow(x, k))] != cid) return false;
    }
    return true;
  }
};

std::shared_ptr<const OracleData> build_oracle_data(std::int64_t q) {
  std::int64_t order = group_order(q);
  auto ctx = group_data(q);
  auto data = std::make_shared<OracleData>();
  data->q = q;
  data->odd = q % 2 == 1;
  data->half = (q - 1) / 2;
  data->dlog = ctx->dlog;
  int shift = 0;
  while ((std::int64_t(1) << shift) < q) ++shift;
  data->shift = shift;

  const Field& fq = ctx->fq;
  data->mul.resize(q * q);
  data->add.resize(q * q);
  data->neg.resize(q);
  data->inv.assign(q, 0);
  std::vector<FieldElem> elems;
  elems.reserve(q);
  for (std::int64_t i = 0; i < q; ++i) elems.push_back(fq.from_index(i));
  for (std::int64_t i = 0; i < q; ++i) {
    data->neg[i] = static_cast<std::int32_t>((-elems[i]).index());
    if (i != 0) data->inv[i] = static_cast<std::int32_t>(elems[i].inverse().index());
    for (std::int64_t j = 0; j < q; ++j) {
      data->mul[i * q + j] = static_cast<std::int32_t>((elems[i] * elems[j]).index());
      data->add[i * q + j] = static_cast<std::int32_t>((elems[i] + elems[j]).index());
    }
  }
  std::int64_t one = fq.one().index();
  data->identity_key = data->normalize_pack(one, 0, 0, one);

  // Enumerate SL2(q): a != 0 forces d; a = 0 forces c = -1/b.
  auto push = [&](std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    std::uint64_t key = data->normalize_pack(a, b, c, d);
    if (data->id_of.emplace(key, static_cast<std::int32_t>(data->keys.size())).second)
      data->keys.push_back(key);
  };
  for (std::int64_t a = 1; a < q; ++a) {
    std::int64_t ainv = data->inv[a];
    for (std::int64_t b = 0; b < q; ++b)
      for (std::int64_t c = 0; c < q; ++c)
        push(a, b, c, data->f_mul(ainv, data->f_add(one, data->f_mul(b, c))));
  }
  for (std::int64_t b = 1; b < q; ++b) {
    std::int64_t c = data->neg[data->inv[b]];
    for (std::int64_t d = 0; d < q; ++d) push(0, b, c, d);
  }
  if (static_cast<std::int64_t>(data->keys.size()) != order)
    fail(Errc::InvalidMatrix, "group enumeration size mismatch");

  // Conjugacy partition by direct orbit computation.
  data->class_id.assign(data->keys.size(), -1);
  for (std::size_t i = 0; i < data->keys.size(); ++i) {
    if (data->class_id[i] != -1) continue;
    auto cid = static_cast<std::int32_t>(data->orbits.size());
    OracleData::Orbit orbit;
    std::uint64_t g = data->keys[i];
    std::uint64_t min_key = ~std::uint64_t(0);
    for (std::uint64_t xkey : data->keys) {
      std::uint64_t conj = data->mat_mul(data->mat_mul(xkey, g), data->mat_inv(xkey));
      std::int32_t idx = data->id_of.at(conj);
      if (data->class_id[idx] == -1) {
        data->class_id[idx] = cid;
        ++orbit.size;
        min_key = std::min(min_key, conj);
      }
    }
    orbit.rep = data->id_of.at(min_key);
    orbit.elt_order = data->order_of(min_key);
    data->orbits.push_back(orbit);
  }
  std::sort(data->orbits.begin(), data->orbits.end(), [&](const auto& x, const auto& y) {
    return std::tuple(x.elt_order, x.size, data->keys[x.rep]) <
           std::tuple(y.elt_order, y.size, data->keys[y.rep]);
  });

  return data;
}

std::shared_ptr<const OracleData> oracle_data(std::int64_t q, std::int64_t cap) {
  std::int64_t order = group_order(q);
  if (order > cap)
    fail(Errc::OracleCapExceeded, "|PSL2(" + std::to_string(q) + ")| = " + std::to_string(order) +
                                      " exceeds the oracle cap " + std::to_string(cap));
  static std::mutex mu;
  static std::map<std::int64_t, std::shared_future<std::shared_ptr<const OracleData>>> cache;
  return cached_build<OracleData>(cache, mu, q, build_oracle_data);
}

std::uint64_t key_of(const OracleData& od, const ProjMatrix& g) {
  return od.normalize_pack(g.a().index(), g.b().index(), g.c().index(), g.d().index());
}

ProjMatrix matrix_of(const Field& fq, const OracleData& od, std::uint64_t key) {
  std::int64_t v[4];
  od.unpack(key, v);
  return ProjMatrix::make(fq.from_index(v[0]), fq.from_index(v[1]), fq.from_index(v[2]),
                          fq.from_index(v[3]));
}

}  // namespace

bool conjugate_test(const ProjMatrix& g, const ProjMatrix& h, std::int64_t oracle_cap) {
  if (!g.field().same_field(h.field()))
    fail(Errc::FieldMismatch, "conjugacy test across different fields");
  auto od = oracle_data(g.field().size(), oracle_cap);
  return od->class_id[od->id_of.at(key_of(*od, g))] == od->class_id[od->id_of.at(key_of(*od, h))];
}

bool is_rational_element(const ProjMatrix& g, std::int64_t oracle_cap) {
  auto od = oracle_data(g.field().size(), oracle_cap);
  return od->element_rational(key_of(*od, g));
}

std::vector<OrbitClass> enumerate_classes_bruteforce(std::int64_t q, std::int64_t oracle_cap) {
  auto od = oracle_data(q, oracle_cap);
  auto ctx = group_data(q);
  std::vector<OrbitClass> out;
  out.reserve(od->orbits.size());
  for (const auto& orbit : od->orbits)
    out.push_back(OrbitClass{matrix_of(ctx->fq, *od, od->keys[orbit.rep]), orbit.size,
                             orbit.elt_order});
  return out;
}

int count_rational_classes_oracle(std::int64_t q, std::int64_t oracle_cap) {
  auto od = oracle_data(q, oracle_cap);
  int count = 0;
  for (const auto& orbit : od->orbits)
    if (od->element_rational(od->keys[orbit.rep])) ++count;
  return count;
}

}  // namespace psl2rc
