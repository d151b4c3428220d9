#pragma once

#include <string>

#include "refclass/verdict.hpp"

namespace refclass {

inline constexpr int kTraceSchemaVersion = 1;

// Machine-readable trace document (JSON, pretty-printed, trailing
// newline). Self-contained: candidates, edges, labels, survivors, and
// interval are all present, so the verdict can be re-derived from the
// document alone. All numbers are exact rational strings ("41/55").
std::string trace_json(const Verdict& verdict);

// Human-readable listing: each candidate, each defeat with principle
// name and witness facts, the fixpoint labels, and the final cover.
std::string render_explanation(const Verdict& verdict);

}  // namespace refclass
