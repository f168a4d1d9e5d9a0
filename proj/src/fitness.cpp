#include "revigis/fitness.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "revigis/errors.hpp"
#include "revigis/fusion.hpp"

namespace revigis::fitness {

bool is_known_parameter(std::string_view parameter) {
  return parameter == "class_quality" || fusion::parse_quality_parameter(parameter).has_value();
}

namespace {

void check_key(const std::string& owner, const std::string& subject, const std::string& parameter,
               std::set<std::pair<std::string, std::string>>& seen) {
  if (subject.empty()) throw ValidationError(owner + ": empty subject");
  if (!is_known_parameter(parameter))
    throw ValidationError(owner + ": unknown quality parameter '" + parameter + "'");
  if (!seen.emplace(subject, parameter).second)
    throw ValidationError(owner + ": (" + subject + ", " + parameter + ") listed twice");
}

void check_grade(const std::string& owner, const GradeLattice& l, const Grade& g) {
  if (!l.contains(g)) throw ValidationError(owner + ": grade '" + g.name() + "' is not on the declared scale");
}

}  // namespace

void validate(const ProductOntology& product) {
  const std::string owner = "product '" + product.product + "'";
  if (product.product.empty()) throw ValidationError("product ontology without a name");
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& s : product.statements) {
    check_key(owner, s.subject, s.parameter, seen);
    check_grade(owner, product.lattice, s.grade);
  }
}

void validate(const ProblemOntology& problem) {
  const std::string owner = "problem '" + problem.problem + "'";
  if (problem.problem.empty()) throw ValidationError("problem ontology without a name");
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& r : problem.requirements) {
    check_key(owner, r.subject, r.parameter, seen);
    check_grade(owner, problem.lattice, r.required);
    check_grade(owner, problem.lattice, r.relevance);
  }
}

void validate_subjects(const ProductOntology& product, const std::vector<std::string>& known_subjects) {
  std::set<std::string_view> known(known_subjects.begin(), known_subjects.end());
  for (const auto& s : product.statements)
    if (!known.contains(s.subject))
      throw ValidationError("product '" + product.product + "': subject '" + s.subject + "' does not resolve");
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::fit: return "fit";
    case Verdict::unfit: return "unfit";
    case Verdict::unknown: return "unknown";
    case Verdict::incomparable: return "incomparable";
  }
  return "?";
}

std::size_t FitnessReport::count(Verdict v) const {
  return static_cast<std::size_t>(
      std::count_if(verdicts.begin(), verdicts.end(), [&](const RequirementVerdict& r) { return r.verdict == v; }));
}

FitnessReport conflate(const ProductOntology& product, const ProblemOntology& problem, UnknownPolicy policy) {
  if (!(product.lattice == problem.lattice))
    throw LatticeMismatch("product '" + product.product + "' and problem '" + problem.problem +
                          "' use different grade scales");
  validate(product);
  validate(problem);
  const GradeLattice& l = problem.lattice;

  std::map<std::pair<std::string_view, std::string_view>, const Grade*> offered;
  for (const auto& s : product.statements) offered[{s.subject, s.parameter}] = &s.grade;

  FitnessReport report;
  report.product = product.product;
  report.problem = problem.problem;
  report.policy = policy;
  for (const auto& req : problem.requirements) {
    if (l.is_bottom(req.relevance)) continue;
    RequirementVerdict v{req, std::nullopt, Verdict::unknown};
    auto it = offered.find({req.subject, req.parameter});
    if (it != offered.end()) {
      const Grade& g = *it->second;
      v.offered = g;
      if (l.leq(req.required, g)) v.verdict = Verdict::fit;
      else if (l.leq(g, req.required)) v.verdict = Verdict::unfit;
      else v.verdict = Verdict::incomparable;
      report.weakest = report.weakest ? l.meet(*report.weakest, g) : g;
    }
    report.verdicts.push_back(std::move(v));
  }
  report.fit = report.count(Verdict::unfit) == 0 && report.count(Verdict::incomparable) == 0 &&
               (policy == UnknownPolicy::lenient || report.count(Verdict::unknown) == 0);
  return report;
}

std::vector<RankedProduct> rank_products(const std::vector<ProductOntology>& products,
                                         const ProblemOntology& problem, UnknownPolicy policy) {
  std::vector<RankedProduct> ranked;
  for (std::size_t i = 0; i < products.size(); ++i) ranked.push_back({i, conflate(products[i], problem, policy)});
  auto key = [](const RankedProduct& r) {
    return std::tuple(r.report.count(Verdict::unfit) + r.report.count(Verdict::incomparable),
                      r.report.count(Verdict::unknown), std::string_view(r.report.product));
  };
  std::stable_sort(ranked.begin(), ranked.end(),
                   [&](const RankedProduct& a, const RankedProduct& b) { return key(a) < key(b); });
  return ranked;
}

}  // namespace revigis::fitness
