#pragma once

// Serialization between the domain types and their external formats:
// deterministic JSON (insertion-ordered keys), "x,p/q" function tables,
// "#N=" set files. Every emitter has a parser that reconstructs the
// originating value, so emitted reports round-trip.
//
// Scalar conventions: rationals render as canonical "p/q" strings ("p" when
// integral); integer-typed fields render as JSON numbers while they fit a
// 64-bit word and as decimal strings beyond. Parsers accept both spellings.

#include "petlab/config.hpp"
#include "petlab/counting.hpp"
#include "petlab/dioph.hpp"
#include "petlab/gowers.hpp"
#include "petlab/grid.hpp"
#include "petlab/increment.hpp"
#include "petlab/pet.hpp"

#include <json.hpp>

#include <string>

namespace petlab {

using Json = nlohmann::ordered_json;

Json json_of_int(const Int& v);
Int int_of_json(const Json& j);
Json json_of_rat(const Rat& v);
Rat rat_of_json(const Json& j);

// "p/q", integer, or exact decimal text ("0.25", "3e-2", "-1.5e3"); decimals
// convert as written, digits over a power of ten, never through floating.
Rat parse_number(const std::string& text);

// Best rational approximation with denominator <= max_den (continued
// fractions plus the boundary semiconvergent); exact pass-through when the
// denominator already fits. Ties prefer the smaller denominator.
Rat bounded_denominator(const Rat& x, const Int& max_den);

Json json_of_config(const Configuration& c);
Configuration config_of_json(const Json& j);

// Degree -> count map with the degree as the key string.
Json json_of_degseq(const DegreeSequence& s);
DegreeSequence degseq_of_json(const Json& j);

// {"r", "d", "y_scale", "forms": [{"a", "b", "lineage"}], "bad": [...]} with
// polynomials as strings. A bad condition's step is its highest parameter
// index, so the flat rendering loses nothing.
Json json_of_system(const LinearSystem& sys);
LinearSystem system_of_json(const Json& j);

// Same shape with integer forms, plus "h", "initial_correlation", "trace";
// the per-step excluded values replace the symbolic bad list.
Json json_of_concrete_run(const ConcreteRun& run);
ConcreteRun concrete_run_of_json(const Json& j);

// "count" renders as a JSON number when the value is integral.
Json json_of_count(const CountReport& r);
CountReport count_of_json(const Json& j);

Json json_of_expansion(const Expansion& e);
Expansion expansion_of_json(const Json& j);

// with_root adds the floating real root; exact output omits it.
Json json_of_norm(const NormValue& v, bool with_root);
NormValue norm_of_json(const Json& j);

Json json_of_scale(const ScaleDecomposition& s, bool with_float);
ScaleDecomposition scale_of_json(const Json& j);

Json json_of_power_min(const PowerMin& m);
PowerMin power_min_of_json(const Json& j);

Json json_of_recurrence(const RecurrenceTrace& t);
RecurrenceTrace recurrence_of_json(const Json& j);

Json json_of_progression(const PowerProgression& p);
PowerProgression progression_of_json(const Json& j);

Json json_of_increment(const IncrementResult& r);
IncrementResult increment_of_json(const Json& j);

Json json_of_trajectory(const IterationTrajectory& t);
IterationTrajectory trajectory_of_json(const Json& j);

// exact_only keeps the exact fields and the chain; the floating diagnostics
// (lhs, normalization, ratio sum, both bound terms) appear otherwise and
// parse back to zero when absent.
Json json_of_probe(const VonNeumannReport& r, bool exact_only);
VonNeumannReport probe_of_json(const Json& j);

// One "x,p/q" line per point of the window, zeros included, so the stored
// window round-trips. Blank lines and "#" comments are ignored on input.
std::string function_to_csv(const GridFunction& f);
GridFunction function_from_csv(const std::string& text);

// "#N=<n>" header, then one element or inclusive "a-b" run per line;
// emission collapses maximal runs. "#" comments allowed after the header.
std::string set_to_text(const DensitySet& A);
DensitySet set_from_text(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace petlab
