#include "initsem/builtin.hpp"

namespace initsem::builtin {

const Signature& lambda_calculus() {
  static const Signature sig = parse_signature(
      "signature LC\n"
      "con app : [0,0]\n"
      "con abs : [1]\n");
  return sig;
}

const Signature& first_order_logic() {
  static const Signature sig = parse_signature(
      "signature FOL\n"
      "con top : []\n"
      "con bot : []\n"
      "con neg : [0]\n"
      "con and : [0,0]\n"
      "con or : [0,0]\n"
      "con imp : [0,0]\n"
      "con exists : [1]\n"
      "con forall : [1]\n");
  return sig;
}

const Signature& linear_logic() {
  static const Signature sig = parse_signature(
      "signature LL\n"
      "con top : []\n"
      "con zero : []\n"
      "con bang : [0]\n"
      "con whynot : [0]\n"
      "con with : [0,0]\n"
      "con parr : [0,0]\n"
      "con oplus : [0,0]\n"
      "con tensor : [0,0]\n"
      "con lollipop : [0,0]\n"
      "con exists : [1]\n"
      "con forall : [1]\n");
  return sig;
}

const Signature& empty() {
  static const Signature sig = parse_signature("signature E\n");
  return sig;
}

const Signature& unary() {
  static const Signature sig = parse_signature("signature U\ncon u : [0]\n");
  return sig;
}

const Signature& pair() {
  static const Signature sig = parse_signature("signature PAIR\ncon pair : [0,0]\n");
  return sig;
}

std::optional<Signature> find(std::string_view name) {
  for (const Signature* s : {&lambda_calculus(), &first_order_logic(), &linear_logic(), &empty(),
                             &unary(), &pair()}) {
    if (s->name() == name) return *s;
  }
  return std::nullopt;
}

std::vector<Signature> law_fixtures() {
  return {lambda_calculus(), first_order_logic(), linear_logic()};
}

}  // namespace initsem::builtin
