#include "pcurv/surface/certify.hpp"

#include <algorithm>
#include <future>
#include <unordered_map>

#include "pcurv/arith/errors.hpp"

namespace pcurv {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Finite:
      return "finite";
    case Verdict::Obstructed:
      return "obstructed";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

std::size_t matrix_hash(const NFMatrix& m) {
  std::size_t h = 0;
  for (const auto& e : m.elements()) h = h * 0x9e3779b97f4a7c15ULL + e.hash();
  return h;
}

NFMatrix sign_normalized(const NFMatrix& m) {
  for (const auto& e : m.elements()) {
    for (const auto& c : e.coordinates()) {
      if (c == 0) continue;
      return c > 0 ? m : -m;
    }
  }
  return m;
}

namespace {

struct MatrixHasher {
  std::size_t operator()(const NFMatrix& m) const { return matrix_hash(m); }
};

template <class F>
auto parallel_map(std::size_t count, unsigned jobs, F&& f) -> std::vector<std::invoke_result_t<F, std::size_t>> {
  using R = std::invoke_result_t<F, std::size_t>;
  std::vector<R> out(count);
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(jobs, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::future<void>> tasks;
  for (std::size_t w = 0; w < workers; ++w) {
    tasks.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < count; i += workers) out[i] = f(i);
    }));
  }
  for (auto& t : tasks) t.get();
  return out;
}

}  // namespace

FinitenessCertificate certify_finiteness(const Representation& rho, const CertifyOptions& options) {
  FinitenessCertificate cert;
  const bool sl2 = rho.target() == TargetGroup::SL2 || rho.unimodular();
  const auto& names = rho.presentation().names();
  const std::size_t ngen = rho.generators().size();

  if (!sl2) {
    for (std::size_t i = 0; i < ngen; ++i) {
      const auto k = is_root_of_unity(det2(rho.generators()[i]));
      if (!k) {
        cert.verdict = Verdict::Obstructed;
        cert.witness = Word::generator(i);
        cert.reason = "determinant of " + names[i] + " is not a root of unity";
        return cert;
      }
      cert.determinant_orders.push_back(*k);
    }
  }

  auto canon = [&](const NFMatrix& m) { return options.projective ? sign_normalized(m) : m; };
  auto order_of = [&](const NFMatrix& m) { return sl2 ? element_order(m) : gl2_element_order(m); };

  // each simple loop in list order: integral trace, trace bound, finite order
  if (sl2) cert.arch = ArchCheck{};
  for (const Word& w : simple_loop_products(rho.presentation())) {
    const std::vector<Word> one{w};
    const TraceCheck nonarch = nonarch_check(rho, one);
    if (!nonarch.passed) {
      cert.nonarch = nonarch;
      cert.verdict = Verdict::Obstructed;
      cert.witness = w;
      cert.reason = nonarch.reason;
      return cert;
    }
    if (sl2) {
      ArchCheck arch = arch_check(rho, one, options.evidence_tolerance, options.precision_cap);
      for (auto& ev : arch.evidence) cert.arch->evidence.push_back(std::move(ev));
      if (!arch.passed) {
        cert.arch->passed = false;
        cert.arch->witness = w;
        cert.arch->reason = arch.reason;
        cert.verdict = Verdict::Obstructed;
        cert.witness = w;
        cert.reason = arch.reason;
        return cert;
      }
    }
    const ElementOrder order = order_of(rho.evaluate(w));
    if (!order.finite) {
      cert.verdict = Verdict::Obstructed;
      cert.witness = w;
      cert.reason = order.reason;
      return cert;
    }
  }

  std::vector<NFMatrix> steps;
  std::vector<Word> step_words;
  for (std::size_t i = 0; i < ngen; ++i) {
    steps.push_back(rho.generators()[i]);
    step_words.push_back(Word::generator(i));
    steps.push_back(rho.inverses()[i]);
    step_words.push_back(Word::generator(i, -1));
  }

  std::unordered_map<NFMatrix, std::size_t, MatrixHasher> index;
  const NFMatrix id = canon(nf_identity(rho.field()));
  index.emplace(id, 0);
  cert.elements.push_back(id);
  cert.words.emplace_back();
  cert.max_order_seen = 1;

  // returns false once a verdict is final
  auto admit = [&](std::size_t first_new) -> bool {
    const std::size_t count = cert.elements.size() - first_new;
    const auto orders = parallel_map(count, options.jobs, [&](std::size_t i) {
      return order_of(cert.elements[first_new + i]);
    });
    for (std::size_t i = 0; i < count; ++i) {
      const auto& o = orders[i];
      if (!o.finite) {
        cert.verdict = Verdict::Obstructed;
        cert.witness = cert.words[first_new + i];
        cert.reason = o.reason;
        return false;
      }
      cert.max_order_seen = std::max(cert.max_order_seen, o.order);
      if (o.order > options.max_order) {
        cert.verdict = Verdict::Inconclusive;
        cert.witness = cert.words[first_new + i];
        cert.reason = "element order " + std::to_string(o.order) + " exceeds max_order";
        return false;
      }
    }
    return true;
  };

  std::vector<std::size_t> frontier{0};
  bool running = true;
  while (running && !frontier.empty()) {
    const auto products = parallel_map(frontier.size(), options.jobs, [&](std::size_t i) {
      std::vector<NFMatrix> out;
      out.reserve(steps.size());
      for (const auto& s : steps) out.push_back(canon(cert.elements[frontier[i]] * s));
      return out;
    });
    const std::size_t first_new = cert.elements.size();
    std::vector<std::size_t> next;
    for (std::size_t i = 0; i < frontier.size() && running; ++i) {
      for (std::size_t j = 0; j < steps.size(); ++j) {
        const NFMatrix& m = products[i][j];
        if (index.contains(m)) continue;
        if (cert.elements.size() >= options.max_elements) {
          cert.verdict = Verdict::Inconclusive;
          cert.reason = "more than " + std::to_string(options.max_elements) + " elements";
          running = false;
          break;
        }
        index.emplace(m, cert.elements.size());
        next.push_back(cert.elements.size());
        cert.elements.push_back(m);
        cert.words.push_back(cert.words[frontier[i]] * step_words[j]);
      }
    }
    // on the element cap, an obstruction among admitted elements still wins
    const bool admitted = admit(first_new);
    running = running && admitted;
    frontier = std::move(next);
  }
  cert.element_count = cert.elements.size();
  if (running) {
    cert.verdict = Verdict::Finite;
    cert.group_order = cert.element_count;
  }
  return cert;
}

}  // namespace pcurv
