#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "initsem/faults.hpp"
#include "initsem/laws.hpp"
#include "initsem/model.hpp"
#include "initsem/report.hpp"
#include "initsem/signature.hpp"
#include "initsem/term.hpp"

namespace initsem {

/// A target term with hole leaves `$j` (1-based). Templates mention no
/// variables: the ambient context stays symbolic, and a hole's fresh
/// variables are the binders enclosing it.
struct Template {
  bool is_hole = false;
  std::size_t hole = 0;  // 1-based
  std::string constructor;
  /// (binders, child) per argument.
  std::vector<std::pair<std::size_t, Template>> args;
};

std::string print_template(const Template& t);

struct InterpretationHeader {
  std::string name;
  std::string source;
  std::string target;
};

struct Interpretation {
  std::string name;
  Signature source;
  Signature target;
  std::map<std::string, Template> templates;
  /// Set when holes at the wrong depth were admitted (`template-depth`).
  bool depth_override = false;

  const Template& at(std::string_view constructor) const;
};

/// Reads only the `interp NAME : SRC -> TGT` line.
InterpretationHeader parse_interpretation_header(std::string_view text);

/// One `name(pat) = template` line per source constructor. `pat` mirrors the
/// source arity (`{m} $j`); hole j must sit under exactly m_j template
/// binders unless the `template-depth` fault admits it.
Interpretation parse_interpretation(std::string_view text, const Signature& source,
                                    const Signature& target, const Faults& faults = {});

std::string print_interpretation(const Interpretation& interp);

/// Template instantiation: args[j] lives over context + m_j.
Term instantiate(const Interpretation& interp, std::string_view constructor,
                 std::span<const Term> args, std::size_t context);

/// Direct recursion over the source term.
Term translate_term(const Interpretation& interp, const Term& t);

/// The source model carried by target terms: constructors act through their
/// templates, var/rename/subst are the target's.
ModelPtr induced_model(const Interpretation& interp, SubstEngineOptions options = {});

/// translate(subst(t, c)) = subst(translate t, translate . c) exhaustively on
/// the bounded universe, plus `bounds.samples` random cases; translation
/// commutes with renaming, preserves contexts, and equals the fold into the
/// induced model.
LawReport check_substitution_safety(const Interpretation& interp, const LawBounds& bounds);

}  // namespace initsem
