#include "initsem/subst.hpp"

#include "initsem/error.hpp"
#include "scanner.hpp"

namespace initsem {

Renaming::Renaming(std::size_t source, std::size_t target, std::vector<std::size_t> map)
    : source_(source), target_(target), map_(std::move(map)) {
  if (map_.size() != source_) {
    throw Error(ErrorKind::Scope, "renaming table has " + std::to_string(map_.size()) +
                                      " entries for a context of size " + std::to_string(source_));
  }
  for (std::size_t i = 0; i < source_; ++i) {
    if (map_[i] >= target_) {
      throw Error(ErrorKind::Scope, "renaming sends x" + std::to_string(i) + " to x" +
                                        std::to_string(map_[i]) + ", outside context " +
                                        std::to_string(target_));
    }
  }
}

Renaming Renaming::identity(std::size_t n) { return inclusion(n, n); }

Renaming Renaming::inclusion(std::size_t n, std::size_t target) {
  std::vector<std::size_t> map(n);
  for (std::size_t i = 0; i < n; ++i) map[i] = i;
  return Renaming(n, target, std::move(map));
}

Renaming Renaming::then(const Renaming& next) const {
  if (next.source_ != target_) throw Error(ErrorKind::Scope, "renamings do not compose");
  std::vector<std::size_t> map(source_);
  for (std::size_t i = 0; i < source_; ++i) map[i] = next.map_[map_[i]];
  return Renaming(source_, next.target_, std::move(map));
}

Renaming Renaming::extended(std::size_t m) const {
  std::vector<std::size_t> map = map_;
  for (std::size_t p = 0; p < m; ++p) map.push_back(target_ + p);
  return Renaming(source_ + m, target_ + m, std::move(map));
}

std::string print_renaming(const Renaming& r) {
  std::string out = "[";
  for (std::size_t i = 0; i < r.source(); ++i) {
    if (i) out += ",";
    out += std::to_string(i) + "->" + std::to_string(r(i));
  }
  return out + "] into " + std::to_string(r.target());
}

Substitution::Substitution(std::size_t source, std::size_t target, std::vector<Term> images)
    : source_(source), target_(target), images_(std::move(images)) {
  if (images_.size() != source_) {
    throw Error(ErrorKind::Scope, "substitution has " + std::to_string(images_.size()) +
                                      " images for a context of size " + std::to_string(source_));
  }
  for (std::size_t i = 0; i < source_; ++i) {
    if (!images_[i].valid() || images_[i].context() != target_) {
      throw Error(ErrorKind::Scope, "image of x" + std::to_string(i) +
                                        " is not scoped over context " + std::to_string(target_));
    }
  }
}

Substitution Substitution::identity(std::size_t n) {
  return from_renaming(Renaming::identity(n));
}

Substitution Substitution::from_renaming(const Renaming& r) {
  std::vector<Term> images;
  images.reserve(r.source());
  for (std::size_t i = 0; i < r.source(); ++i) images.push_back(Term::var(r(i), r.target()));
  return Substitution(r.source(), r.target(), std::move(images));
}

std::string print_substitution(const Substitution& c) {
  std::string out;
  for (std::size_t i = 0; i < c.source(); ++i) {
    if (i) out += ";";
    out += "x" + std::to_string(i) + "=" + print_term(c[i]);
  }
  return out;
}

Substitution parse_substitution(const Signature& sig, std::size_t source, std::size_t target,
                                std::string_view text) {
  std::vector<Term> images(source);
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view part = text.substr(start, end - start);
    start = end + 1;
    if (part.find_first_not_of(" \t\r\n") == std::string_view::npos) continue;
    std::size_t eq = part.find('=');
    if (eq == std::string_view::npos) throw SyntaxError(1, start, "expected xN=TERM");
    detail::Scanner lhs(part.substr(0, eq));
    std::string name = lhs.expect_ident("variable");
    if (!lhs.at_end() || name.size() < 2 || name[0] != 'x') lhs.fail("expected variable xN");
    std::size_t level = 0;
    try {
      level = std::stoull(name.substr(1));
    } catch (const std::exception&) {
      lhs.fail("expected variable xN");
    }
    if (level >= source) {
      throw Error(ErrorKind::Scope, name + " is outside the source context of size " +
                                        std::to_string(source));
    }
    if (images[level].valid()) throw Error(ErrorKind::Duplicate, name + " assigned twice");
    images[level] = parse_term(sig, target, part.substr(eq + 1));
  }
  for (std::size_t i = 0; i < source; ++i) {
    if (!images[i].valid()) {
      throw Error(ErrorKind::Scope, "substitution leaves x" + std::to_string(i) + " unassigned");
    }
  }
  return Substitution(source, target, std::move(images));
}

namespace {

// Levels below `from` are renamed through `r`; levels introduced by binders
// inside the term (at or above `from`) shift to sit above r.target().
Term rename_rec(const Term& t, const Renaming& r) {
  std::size_t from = r.source();
  std::size_t to = r.target();
  std::size_t context = t.context() - from + to;
  if (t.is_var()) {
    std::size_t l = t.level();
    return Term::var(l < from ? r(l) : l - from + to, context);
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(rename_rec(a, r));
  return Term::con(t.constructor(), std::move(args), context);
}

Term carry(const Term& t, std::size_t target) {
  return t.context() == target ? t : weaken(t, target);
}

// Level of the p-th fresh variable when crossing binders above `base`.
std::size_t fresh_level(std::size_t base, std::size_t p, const Faults& faults) {
  std::size_t level = base + p;
  return faults.weaken_off_by_one && level > 0 ? level - 1 : level;
}

Term oracle_rec(const Term& t, const Substitution& c, const Faults& faults) {
  if (t.is_var()) return c[t.level()];
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (std::size_t j = 0; j < t.args().size(); ++j) {
    std::size_t m = t.binders(j);
    args.push_back(m == 0 ? oracle_rec(t.args()[j], c, faults)
                          : oracle_rec(t.args()[j], weaken_subst(c, m, faults), faults));
  }
  return Term::con(t.constructor(), std::move(args), c.target());
}

struct Bracket {
  const PointedAssignment& f;
  const Faults& faults;
  std::vector<Term> labels;  // one per level of the current term context

  Term run(const Term& t, std::size_t gamma) {
    if (t.is_var()) return f(carry(labels[t.level()], gamma));
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (std::size_t j = 0; j < t.args().size(); ++j) {
      std::size_t m = t.binders(j);
      // strength at m: the point supplies fresh variables for fresh levels
      for (std::size_t p = 0; p < m; ++p) {
        labels.push_back(Term::var(fresh_level(gamma, p, faults), gamma + m));
      }
      args.push_back(run(t.args()[j], gamma + m));
      labels.resize(labels.size() - m);
    }
    return Term::con(t.constructor(), std::move(args), gamma);
  }
};

}  // namespace

Term rename(const Term& t, const Renaming& r) {
  if (t.context() < r.source()) throw Error(ErrorKind::Scope, "renaming source mismatch");
  if (t.context() != r.source()) {
    throw Error(ErrorKind::Scope, "term over " + std::to_string(t.context()) +
                                      " renamed by a renaming from " + std::to_string(r.source()));
  }
  return rename_rec(t, r);
}

Term weaken(const Term& t, std::size_t target) {
  return rename(t, Renaming::inclusion(t.context(), target));
}

Substitution weaken_subst(const Substitution& c, std::size_t m, const Faults& faults) {
  if (m == 0) return c;
  std::vector<Term> images;
  images.reserve(c.source() + m);
  for (std::size_t i = 0; i < c.source(); ++i) images.push_back(carry(c[i], c.target() + m));
  for (std::size_t p = 0; p < m; ++p) {
    images.push_back(Term::var(fresh_level(c.target(), p, faults), c.target() + m));
  }
  return Substitution(c.source() + m, c.target() + m, std::move(images));
}

Term subst_oracle(const Term& t, const Substitution& c, const Faults& faults) {
  if (t.context() != c.source()) {
    throw Error(ErrorKind::Scope, "term over " + std::to_string(t.context()) +
                                      " substituted by a substitution from " +
                                      std::to_string(c.source()));
  }
  return oracle_rec(t, c, faults);
}

PointedAssignment identity_assignment() {
  return [](const Term& t) { return t; };
}

Term hss_bracket(const PointedAssignment& f, const Term& t, std::span<const Term> labels,
                 std::size_t label_context, const Faults& faults) {
  if (labels.size() != t.context()) {
    throw Error(ErrorKind::Scope, "bracket needs one label per level of the term's context");
  }
  for (const auto& l : labels) {
    if (!l.valid() || l.context() != label_context) {
      throw Error(ErrorKind::Scope, "bracket label not scoped over context " +
                                        std::to_string(label_context));
    }
  }
  Bracket b{f, faults, {labels.begin(), labels.end()}};
  return b.run(t, label_context);
}

Term subst_hss(const Term& t, const Substitution& c, const Faults& faults) {
  static const PointedAssignment id = identity_assignment();
  return hss_bracket(id, t, c.images(), c.target(), faults);
}

const char* to_string(Engine engine) { return engine == Engine::Oracle ? "oracle" : "hss"; }

Term substitute(Engine engine, const Term& t, const Substitution& c, const Faults& faults) {
  return engine == Engine::Oracle ? subst_oracle(t, c, faults) : subst_hss(t, c, faults);
}

Substitution compose(const Substitution& c, const Substitution& d, Engine engine,
                     const Faults& faults) {
  if (c.target() != d.source()) throw Error(ErrorKind::Scope, "substitutions do not compose");
  std::vector<Term> images;
  images.reserve(c.source());
  for (const auto& image : c.images()) images.push_back(substitute(engine, image, d, faults));
  return Substitution(c.source(), d.target(), std::move(images));
}

}  // namespace initsem
