#include "initsem/enumerate.hpp"

#include <limits>

#include "initsem/error.hpp"

namespace initsem {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    throw Error(ErrorKind::Resource, "term count overflows 64 bits");
  }
  return a * b;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (b > std::numeric_limits<std::uint64_t>::max() - a) {
    throw Error(ErrorKind::Resource, "term count overflows 64 bits");
  }
  return a + b;
}

TermUniverse::TermUniverse(Signature sig, std::uint64_t cap) : sig_(std::move(sig)), cap_(cap) {}

std::uint64_t TermUniverse::count(std::size_t context, std::size_t height) {
  if (height == 0) return 0;
  auto key = std::make_pair(context, height);
  if (auto it = counts_.find(key); it != counts_.end()) return it->second;
  std::uint64_t total = context;
  for (const auto& c : sig_.constructors()) {
    std::uint64_t product = 1;
    for (std::size_t m : c.arity.binders) product = checked_mul(product, count(context + m, height - 1));
    total = checked_add(total, product);
  }
  counts_.emplace(key, total);
  return total;
}

const std::vector<Term>& TermUniverse::terms(std::size_t context, std::size_t height) {
  auto key = std::make_pair(context, height);
  if (auto it = lists_.find(key); it != lists_.end()) return it->second;
  std::uint64_t expected = count(context, height);
  if (expected > cap_) {
    throw Error(ErrorKind::Resource, "enumeration of " + sig_.name() + " at context " +
                                         std::to_string(context) + ", height " +
                                         std::to_string(height) + " has " +
                                         std::to_string(expected) + " terms, over the cap of " +
                                         std::to_string(cap_));
  }
  std::vector<Term> out;
  out.reserve(expected);
  if (height > 0) {
    for (std::size_t i = 0; i < context; ++i) out.push_back(Term::var(i, context));
    for (const auto& c : sig_.constructors()) {
      std::vector<const std::vector<Term>*> pools;
      bool empty = false;
      for (std::size_t m : c.arity.binders) {
        pools.push_back(&terms(context + m, height - 1));
        empty = empty || pools.back()->empty();
      }
      if (empty) continue;
      if (pools.empty()) {
        out.push_back(Term::con(c.name, {}, context));
        continue;
      }
      // odometer over argument tuples, last argument fastest
      std::vector<std::size_t> digit(pools.size(), 0);
      for (;;) {
        std::vector<Term> args;
        args.reserve(pools.size());
        for (std::size_t j = 0; j < pools.size(); ++j) args.push_back((*pools[j])[digit[j]]);
        out.push_back(Term::con(c.name, std::move(args), context));
        std::size_t j = pools.size();
        while (j > 0 && ++digit[j - 1] == pools[j - 1]->size()) digit[--j] = 0;
        if (j == 0) break;
      }
    }
  }
  return lists_.emplace(key, std::move(out)).first->second;
}

std::uint64_t TermUniverse::rank(const Term& t, std::size_t height) {
  if (t.height() > height) {
    throw Error(ErrorKind::Scope, "term " + print_term(t) + " is taller than " +
                                      std::to_string(height));
  }
  std::size_t n = t.context();
  if (t.is_var()) return t.level();
  std::uint64_t offset = n;
  for (const auto& c : sig_.constructors()) {
    if (c.name == t.constructor()) {
      std::uint64_t r = 0;
      for (std::size_t j = 0; j < c.arity.size(); ++j) {
        r = r * count(n + c.arity.binders[j], height - 1) + rank(t.args()[j], height - 1);
      }
      return offset + r;
    }
    std::uint64_t product = 1;
    for (std::size_t m : c.arity.binders) product = checked_mul(product, count(n + m, height - 1));
    offset += product;
  }
  throw Error(ErrorKind::UnknownConstructor, "unknown constructor '" + t.constructor() + "'");
}

Term TermUniverse::unrank(std::size_t context, std::size_t height, std::uint64_t rank) {
  if (rank >= count(context, height)) {
    throw Error(ErrorKind::Scope, "rank " + std::to_string(rank) + " out of range");
  }
  if (rank < context) return Term::var(rank, context);
  rank -= context;
  for (const auto& c : sig_.constructors()) {
    std::uint64_t product = 1;
    for (std::size_t m : c.arity.binders) product = checked_mul(product, count(context + m, height - 1));
    if (rank >= product) {
      rank -= product;
      continue;
    }
    std::vector<Term> args(c.arity.size());
    for (std::size_t j = c.arity.size(); j-- > 0;) {
      std::uint64_t base = count(context + c.arity.binders[j], height - 1);
      args[j] = unrank(context + c.arity.binders[j], height - 1, rank % base);
      rank /= base;
    }
    return Term::con(c.name, std::move(args), context);
  }
  throw Error(ErrorKind::Scope, "rank out of range");
}

Term TermUniverse::sample(std::size_t context, std::size_t height, SplitMix64& rng) {
  std::uint64_t total = count(context, height);
  if (total == 0) {
    throw Error(ErrorKind::EmptyUniverse, "no term of " + sig_.name() + " over context " +
                                              std::to_string(context) + " with height <= " +
                                              std::to_string(height));
  }
  return unrank(context, height, rng.below(total));
}

std::uint64_t count_terms(const Signature& sig, std::size_t context, std::size_t height) {
  return TermUniverse(sig).count(context, height);
}

std::vector<Term> enumerate_terms(const Signature& sig, std::size_t context, std::size_t height,
                                  std::uint64_t cap) {
  TermUniverse universe(sig, cap);
  return universe.terms(context, height);
}

Term random_term(const Signature& sig, std::size_t context, std::size_t max_height,
                 std::uint64_t seed) {
  TermUniverse universe(sig);
  SplitMix64 rng(seed);
  return universe.sample(context, max_height, rng);
}

}  // namespace initsem
