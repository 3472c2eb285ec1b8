#include "initsem/signature.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "initsem/error.hpp"
#include "scanner.hpp"

namespace initsem {

std::string to_string(const Arity& arity) {
  std::string out = "[";
  for (std::size_t j = 0; j < arity.binders.size(); ++j) {
    if (j) out += ",";
    out += std::to_string(arity.binders[j]);
  }
  return out + "]";
}

Signature::Signature(std::string name, std::vector<Constructor> constructors)
    : name_(std::move(name)), constructors_(std::move(constructors)) {
  for (std::size_t i = 0; i < constructors_.size(); ++i) {
    auto [it, fresh] = index_.emplace(constructors_[i].name, i);
    if (!fresh) {
      throw Error(ErrorKind::Duplicate, "duplicate constructor '" + constructors_[i].name +
                                            "' in signature " + name_);
    }
  }
}

const Constructor* Signature::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? nullptr : &constructors_[it->second];
}

const Constructor& Signature::at(std::string_view name) const {
  if (const auto* c = find(name)) return *c;
  throw Error(ErrorKind::UnknownConstructor,
              "unknown constructor '" + std::string(name) + "' in signature " + name_);
}

std::optional<std::size_t> Signature::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> Signature::binder_counts() const {
  std::set<std::size_t> seen;
  for (const auto& c : constructors_) seen.insert(c.arity.binders.begin(), c.arity.binders.end());
  return {seen.begin(), seen.end()};
}

Signature parse_signature(std::string_view text) {
  detail::Scanner in(text);
  in.expect_keyword("signature");
  std::string name = in.expect_ident("signature name");
  std::vector<Constructor> cons;
  std::set<std::string> seen;
  while (!in.at_end()) {
    std::size_t line = in.line(), col = in.column();
    in.expect_keyword("con");
    std::string cname = in.expect_ident("constructor name");
    if (!seen.insert(cname).second) {
      throw SyntaxError(line, col, "duplicate constructor '" + cname + "'");
    }
    in.expect(":");
    in.expect("[");
    Arity arity;
    if (!in.accept("]")) {
      do {
        if (in.peek() == '-') in.fail("negative binder count");
        arity.binders.push_back(in.expect_nat("binder count"));
      } while (in.accept(","));
      in.expect("]");
    }
    cons.push_back({std::move(cname), std::move(arity)});
  }
  return Signature(std::move(name), std::move(cons));
}

std::string print_signature(const Signature& sig) {
  std::ostringstream out;
  out << "signature " << sig.name() << "\n";
  for (const auto& c : sig.constructors()) out << "con " << c.name << " : " << to_string(c.arity) << "\n";
  return out.str();
}

void SignatureMorphism::validate() const {
  std::set<std::string> images;
  for (const auto& c : source.constructors()) {
    auto it = mapping.find(c.name);
    if (it == mapping.end()) {
      throw Error(ErrorKind::Morphism, "morphism " + source.name() + " -> " + target.name() +
                                           " is not defined on '" + c.name + "'");
    }
    const Constructor* image = target.find(it->second);
    if (!image) {
      throw Error(ErrorKind::Morphism,
                  "morphism maps '" + c.name + "' to unknown constructor '" + it->second + "'");
    }
    if (image->arity != c.arity) {
      throw Error(ErrorKind::Arity, "morphism maps '" + c.name + "' " + to_string(c.arity) +
                                        " to '" + image->name + "' " + to_string(image->arity));
    }
    if (!images.insert(it->second).second) {
      throw Error(ErrorKind::Morphism, "morphism is not injective at '" + it->second + "'");
    }
  }
  for (const auto& [from, to] : mapping) {
    if (!source.contains(from)) {
      throw Error(ErrorKind::Morphism, "morphism mentions '" + from + "', not in " + source.name());
    }
  }
}

const std::string& SignatureMorphism::apply(std::string_view constructor) const {
  auto it = mapping.find(std::string(constructor));
  if (it == mapping.end()) {
    throw Error(ErrorKind::Morphism, "morphism undefined on '" + std::string(constructor) + "'");
  }
  return it->second;
}

SignatureMorphism make_morphism(Signature source, Signature target,
                                std::map<std::string, std::string> mapping) {
  SignatureMorphism m{std::move(source), std::move(target), std::move(mapping)};
  m.validate();
  return m;
}

SignatureMorphism identity_morphism(const Signature& sig) {
  std::map<std::string, std::string> mapping;
  for (const auto& c : sig.constructors()) mapping.emplace(c.name, c.name);
  return SignatureMorphism{sig, sig, std::move(mapping)};
}

SignatureMorphism compose(const SignatureMorphism& first, const SignatureMorphism& second) {
  std::map<std::string, std::string> mapping;
  for (const auto& [from, mid] : first.mapping) mapping.emplace(from, second.apply(mid));
  return SignatureMorphism{first.source, second.target, std::move(mapping)};
}

std::map<std::string, std::string> parse_constructor_map(std::string_view text) {
  detail::Scanner in(text);
  std::map<std::string, std::string> out;
  if (in.at_end()) return out;
  do {
    if (in.at_end()) break;
    std::string from = in.expect_ident("constructor name");
    in.expect("=");
    std::string to = in.expect_ident("constructor name");
    if (!out.emplace(from, to).second) in.fail("constructor '" + from + "' mapped twice");
  } while (in.accept(";") || in.accept(","));
  if (!in.at_end()) in.fail("unexpected input" + in.found());
  return out;
}

namespace {

std::string qualify(const std::set<std::string>& taken, const std::string& prefix,
                    const std::string& name) {
  std::string candidate = name;
  while (taken.count(candidate)) candidate = prefix + "." + candidate;
  return candidate;
}

}  // namespace

SignatureSum sum_signatures(const Signature& a, const Signature& b) {
  std::vector<Constructor> cons(a.constructors().begin(), a.constructors().end());
  std::set<std::string> taken;
  std::map<std::string, std::string> left, right;
  for (const auto& c : a.constructors()) {
    taken.insert(c.name);
    left.emplace(c.name, c.name);
  }
  for (const auto& c : b.constructors()) {
    std::string name = qualify(taken, b.name(), c.name);
    taken.insert(name);
    right.emplace(c.name, name);
    cons.push_back({name, c.arity});
  }
  Signature sum(a.name() + "_" + b.name(), std::move(cons));
  return SignatureSum{sum, SignatureMorphism{a, sum, std::move(left)},
                      SignatureMorphism{b, sum, std::move(right)}};
}

SignaturePushout pushout_signatures(const Signature& base, const SignatureMorphism& left,
                                    const SignatureMorphism& right) {
  if (!(left.source == base) || !(right.source == base)) {
    throw Error(ErrorKind::Morphism, "pushout span legs must both start at " + base.name());
  }
  left.validate();
  right.validate();

  // right-target constructor -> the left-target name it is glued to
  std::map<std::string, std::string> glued;
  for (const auto& c : base.constructors()) glued.emplace(right.apply(c.name), left.apply(c.name));

  const Signature& lt = left.target;
  const Signature& rt = right.target;
  std::vector<Constructor> cons(lt.constructors().begin(), lt.constructors().end());
  std::set<std::string> taken;
  std::map<std::string, std::string> left_leg, right_leg;
  for (const auto& c : lt.constructors()) {
    taken.insert(c.name);
    left_leg.emplace(c.name, c.name);
  }
  for (const auto& c : rt.constructors()) {
    if (auto it = glued.find(c.name); it != glued.end()) {
      right_leg.emplace(c.name, it->second);
      continue;
    }
    std::string name = qualify(taken, rt.name(), c.name);
    taken.insert(name);
    right_leg.emplace(c.name, name);
    cons.push_back({name, c.arity});
  }
  Signature apex(lt.name() + "_" + rt.name(), std::move(cons));
  return SignaturePushout{apex, SignatureMorphism{lt, apex, std::move(left_leg)},
                          SignatureMorphism{rt, apex, std::move(right_leg)}};
}

}  // namespace initsem
