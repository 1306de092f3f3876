#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "banachlab/cantor.hpp"
#include "banachlab/index_search.hpp"
#include "banachlab/lie.hpp"
#include "banachlab/numrange.hpp"
#include "banachlab/structure.hpp"

namespace banachlab {

using Json = nlohmann::json;

// Wire schemas.  A space is {"field": "real"|"complex", "descriptor": D}
// with D one of
//   {"lp": {"p": <number>|"inf", "dim": n}}
//   {"polyhedral": {"vertices": [[..], ..]}}          (one row per vertex)
//   {"sum": {"kind": "l1"|"linf", "parts": [D, ..]}}
//   {"sup_subspace": {"nodes": [..], "basis": [[..], ..]}}
// An operator is {"space": S, "matrix": [[..], ..]} with optional "codomain"
// and "provenance"; complex entries are [re, im] pairs.
Json space_to_json(const Space& s);
Space space_from_json(const Json& j);
Json operator_to_json(const Operator& T);
Operator operator_from_json(const Json& j);

// Computed quantities carry their provenance.
Json scalar(double value, bool exact);

const char* ternary_name(Ternary t);

Json vector_json(const Eigen::VectorXd& v);
Json vector_json(const Eigen::VectorXcd& v);
Json matrix_json(const Eigen::MatrixXd& m);
Json matrix_json(const Eigen::MatrixXcd& m);

Json to_json(const PairEnumeration& p, Field field);
Json extremes_json(const std::vector<Eigen::VectorXd>& xs);
Json to_json(const RangeSummary& r);
Json to_json(const ExpFormulaReport& r);
Json to_json(const DaugavetReport& r);
Json to_json(const CircleReport& r);
Json to_json(const LieAlgebraReport& r);
Json to_json(const SemigroupReport& r);
Json to_json(const NormResult& r);
Json to_json(const IndexReport& r);
Json to_json(const DualIndexReport& r);
Json to_json(const CantorGrid& g);
Json to_json(const BumpResult& b);
Json to_json(const QuotientReport& q);
Json to_json(const GapFunctionalReport& g);
Json to_json(const ExperimentRecord& r);
Json to_json(const std::vector<ExperimentRecord>& rs);

// Canonical text form: two-space indent, sorted keys, trailing newline.
std::string dump_json(const Json& j);

// Reads a whole file / parses JSON, wrapping failures in UsageError.
std::string read_text_file(const std::string& path);
Json parse_json(const std::string& text);

}  // namespace banachlab
