// Command-line front end: enumeration, free energies, recursion solvers,
// oracle comparisons, coefficient tables and the built-in check suites.
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include "sgqft/applications.hpp"
#include "sgqft/gaussian.hpp"
#include "sgqft/json_io.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace sgqft;
using nlohmann::json;

namespace {

struct CheckFailure {};

void report(const std::string &name, bool ok)
{
	std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << "\n";
	if (!ok)
		throw CheckFailure{};
}

int runEnumerate(int g, int n, int labels, bool genus0, const std::string &format)
{
	EnumOptions opts;
	opts.N = labels;
	opts.genusZeroOnly = genus0;
	auto classes = enumerate_stable(g, n, opts);
	if (format == "json") {
		json out;
		out["genus"] = g;
		out["legs"] = n;
		out["count"] = classes.size();
		out["classes"] = json::array();
		for (auto &[key, cls] : classes)
			out["classes"].push_back(
			    json{{"aut", cls.aut.get_str()}, {"graph", graph_to_json(cls.rep)}});
		std::cout << out.dump(2) << "\n";
	} else {
		std::cout << "count " << classes.size() << "\n";
		for (auto &[key, cls] : classes) {
			std::cout << "aut=" << cls.aut.get_str() << " vertices=[";
			for (int v = 0; v < cls.rep.numVertices(); ++v)
				std::cout << (v ? "," : "") << cls.rep.vertexGenus[static_cast<size_t>(v)];
			std::cout << "] edges=" << cls.rep.numEdges() << " legs=" << cls.rep.numLegs() << "\n";
		}
	}
	return 0;
}

int runFreeEnergy(int g, int n, int labels, const std::string &format)
{
	GraphSum s = abstract_free_energy(g, n, labels);
	if (format == "json") {
		std::cout << graph_sum_to_json(s).dump(2) << "\n";
	} else {
		for (auto &[key, t] : s.terms())
			std::cout << t.coef.str() << "  " << graph_to_json(t.rep).dump() << "\n";
	}
	return 0;
}

int runRealize(int g, int labels, const std::string &format)
{
	FeynmanContext ctx(labels);
	Poly w = realized_free_energy(g, ctx);
	if (format == "json")
		std::cout << json{{"genus", g}, {"poly", poly_to_json(w)}}.dump(2) << "\n";
	else
		std::cout << "W_" << g << " = " << w.str() << "\n";
	return 0;
}

int runRecursion(const std::string &model, int gMax, const std::string &format)
{
	json arr = json::array();
	auto emitPoly = [&](int g, const Poly &p) {
		if (format == "json")
			arr.push_back(json{{"genus", g}, {"poly", poly_to_json(p)}});
		else
			std::cout << "g=" << g << "  " << p.str() << "\n";
	};
	if (model == "generic") {
		FeynmanContext ctx(1);
		for (auto &[g, p] : recursion_solve(gMax, ctx))
			emitPoly(g, p);
	} else if (model == "1d") {
		for (auto &[g, p] : one_d_recursion(gMax))
			emitPoly(g, p);
	} else if (model == "stable-count") {
		for (auto &[g, p] : stable_count_recursion(gMax))
			emitPoly(g, p);
	} else if (model == "graph-count") {
		for (int g = 2; g <= gMax; ++g)
			emitPoly(g, graph_count_free_energy_kappa(g));
	} else if (model == "airy" || model == "catalan") {
		CurvePreset preset{model == "airy" ? CurveKind::Airy : CurveKind::Catalan};
		Atom c = Atom::coordC();
		for (int g = 2; g <= gMax; ++g) {
			RationalFn f = curve_free_energy(preset, g);
			if (format == "json") {
				arr.push_back(json{{"genus", g}, {"value", rationalfn_to_json(f)}});
			} else if (model == "airy") {
				// A single monomial a / c^e.
				Rational a = f.num().constantTerm() /
				             f.den().coefficientOf(c, f.den().degreeIn(c)).constantTerm();
				std::cout << "g=" << g << "  " << a.str() << "  c_exp=" << f.den().degreeIn(c)
				          << "\n";
			} else {
				std::cout << "g=" << g << "  " << f.str() << "\n";
			}
		}
	} else {
		throw std::invalid_argument("unknown model: " + model);
	}
	if (format == "json")
		std::cout << arr.dump(2) << "\n";
	return 0;
}

int runOracle(int gMax, int labels)
{
	FeynmanContext ctx(labels);
	auto wickSide = wick_free_energies(gMax, ctx);
	bool all = true;
	for (int g = 2; g <= gMax; ++g) {
		bool ok = wickSide[g] == realized_free_energy(g, ctx);
		std::cout << "g=" << g << (ok ? " ok" : " MISMATCH") << "\n";
		all = all && ok;
	}
	return all ? 0 : 1;
}

int runTables(const std::string &model, int gMax, const std::string &format)
{
	EnumerationTable t = build_tables(gMax);
	struct Row {
		std::string family;
		int g, index;
		Rational value;
	};
	std::vector<Row> rows;
	if (model == "stable-count") {
		for (auto &[key, v] : t.a)
			rows.push_back({"a", key.first, key.second, v});
	} else {
		for (auto &[key, v] : t.lambda)
			rows.push_back({"lambda", key.first, key.second, v});
		for (auto &[key, v] : t.b)
			rows.push_back({"b", key.first, key.second, v});
	}
	if (format == "json") {
		json arr = json::array();
		for (auto &r : rows)
			arr.push_back(json{{"family", r.family}, {"g", r.g}, {"index", r.index},
			                   {"value", r.value.str()}});
		std::cout << arr.dump(2) << "\n";
	} else if (format == "csv") {
		std::cout << "family,g,index,value\n";
		for (auto &r : rows)
			std::cout << r.family << "," << r.g << "," << r.index << "," << r.value.str() << "\n";
	} else {
		for (auto &r : rows)
			std::cout << r.family << "[" << r.g << "," << r.index << "] = " << r.value.str() << "\n";
	}
	return 0;
}

void checkGraphs()
{
	report("2 classes for (g,n) = (1,1)", enumerate_stable(1, 1).size() == 2);
	report("7 classes for (g,n) = (2,0)", enumerate_stable(2, 0).size() == 7);
	GraphSum f20 = abstract_free_energy(2, 0);
	StableGraph theta;
	theta.addVertex(0);
	theta.addVertex(0);
	for (int i = 0; i < 3; ++i)
		theta.addEdge(0, 1);
	report("theta coefficient 1/12 in F_{2,0}", f20.coefficientOf(theta) == Rational(1, 12));
	report("marking identity (g,k) = (1,1)", verify_marking_identity(1, 1));
	report("marking identity (g,k) = (2,1)", verify_marking_identity(2, 1));
}

void checkOperators()
{
	report("K F_{1,1} = 3 F_{0,3}", op_cut(abstract_free_energy(1, 1)) ==
	                                    abstract_free_energy(0, 3).scaled(Rational(3)));
	GraphSum f2 = abstract_free_energy(2, 0);
	GraphSum f11 = abstract_free_energy(1, 1);
	report("K F_2 = F_{1,2} + 1/2 F_{1,1}^2",
	       op_cut(f2) == abstract_free_energy(1, 2) + (f11 * f11).scaled(Rational(1, 2)));
	report("Lemma: D F_{1,1} = 2 F_{1,2}", verify_lemma_D(1, 1));
	report("Theorem 1 at (2,1)", verify_recursion_thm1(2, 1));
	report("Theorem 2 at (2,0)", verify_recursion_thm2(2, 0));
	report("labelled recursion N=2, g=2, (1,2)", verify_recursion_labelled(2, {0, 0}, 1, 2));
}

void checkRealization()
{
	FeynmanContext ctx(1);
	Poly w2 = realized_free_energy(2, ctx);
	Poly expect = Poly(Atom::vertex1(2, 0));
	{
		Poly k{Atom::kappa()};
		Poly f1p{Atom::vertex1(1, 1)}, f1pp{Atom::vertex1(1, 2)};
		Poly f0t{Atom::vertex1(0, 3)}, f0q{Atom::vertex1(0, 4)};
		expect += (f1pp.scaled(Rational(1, 2)) + (f1p * f1p).scaled(Rational(1, 2))) * k;
		expect += (f0q.scaled(Rational(1, 8)) + (f1p * f0t).scaled(Rational(1, 2))) * k * k;
		expect += (f0t * f0t).scaled(Rational(5, 24)) * k * k * k;
	}
	report("W_2 equals the closed expression", w2 == expect);
	report("operator realization at g = 2", verify_operator_realization(2, ctx));
	auto W = recursion_solve(3, ctx);
	report("recursion solver = graph sum, g <= 3",
	       W[2] == w2 && W[3] == realized_free_energy(3, ctx));
}

void checkOracle()
{
	FeynmanContext ctx(1);
	report("Wick oracle = graph sums, g <= 3 (N = 1)", oracle_equivalence(3, ctx));
	FeynmanContext ctx2(2);
	report("Wick oracle = graph sum, g = 2 (N = 2)", oracle_equivalence(2, ctx2));
}

void checkApplications()
{
	Poly f2 = one_d_free_energy(2);
	Poly want;
	{
		Monomial m1;
		m1.exps[Atom::coordI(2)] = 2;
		m1.exps[Atom::kappa()] = 3;
		want.add(m1, Rational(5, 24));
		Monomial m2;
		m2.exps[Atom::coordI(3)] = 1;
		m2.exps[Atom::kappa()] = 2;
		want.add(m2, Rational(1, 8));
	}
	report("F_2^{1D} = 5/24 I2^2 k^3 + 1/8 I3 k^2", f2 == want);
	report("1D recursion = 1D graph sum, g <= 3", [] {
		auto F = one_d_recursion(3);
		return F[2] == one_d_free_energy(2) && F[3] == one_d_free_energy(3);
	}());
	CurvePreset airy{CurveKind::Airy};
	Atom c = Atom::coordC();
	report("Airy F_2 = 5/(48 c^3)",
	       curve_free_energy(airy, 2) ==
	           RationalFn(Poly(Rational(5)), Poly::atomPow(c, 3).scaled(Rational(48))));
	report("Airy quantum-curve expansion to order 4", curve_ode_check(airy, 4));
	CurvePreset cat{CurveKind::Catalan};
	report("Catalan recursions to g = 3", curve_recursion_check(cat, 3));
	report("lambda rows match graph counting, g <= 4", [] {
		auto rows = lambda_recursion_solve(4);
		Atom kap = Atom::kappa();
		for (int g = 2; g <= 4; ++g) {
			Poly got;
			for (auto &[l, v] : rows[g])
				got.add(Monomial::atom(kap, l), v);
			if (got != graph_count_free_energy_kappa(g))
				return false;
		}
		return true;
	}());
	report("lambda_{4,3} = B_4/12", [] {
		auto rows = lambda_recursion_solve(4);
		return rows[4][3] == bernoulli(4) / Rational(12);
	}());
}

int runCheck(const std::string &suite)
{
	try {
		if (suite == "all" || suite == "graphs")
			checkGraphs();
		if (suite == "all" || suite == "operators")
			checkOperators();
		if (suite == "all" || suite == "realization")
			checkRealization();
		if (suite == "all" || suite == "oracle")
			checkOracle();
		if (suite == "all" || suite == "applications")
			checkApplications();
	} catch (CheckFailure &) {
		return 1;
	}
	return 0;
}

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"exact stable-graph calculus: enumeration, free energies, recursions"};
	app.require_subcommand(1);
	app.fallthrough(); // global options may follow the subcommand
	int budget = 0;
	app.add_option("--budget", budget, "size budget (max 2g-2+n; overrides SGQFT_BUDGET)");

	std::string format = "table";
	auto addFormat = [&](CLI::App *cmd, std::vector<std::string> allowed) {
		cmd->add_option("--format", format, "output format")
		    ->check(CLI::IsMember(allowed))
		    ->capture_default_str();
	};

	int genus = 0, legs = 0, labels = 1, gmax = 2;
	bool genus0 = false, abstractFlag = false;

	auto *enumCmd = app.add_subcommand("enumerate", "list stable graph classes");
	enumCmd->add_option("--genus", genus)->required();
	enumCmd->add_option("--legs", legs)->required();
	enumCmd->add_option("--labels", labels)->check(CLI::Range(1, 4));
	enumCmd->add_flag("--genus0-only", genus0);
	addFormat(enumCmd, {"table", "json"});

	auto *feCmd = app.add_subcommand("free-energy", "abstract free energy as a graph sum");
	feCmd->add_option("--genus", genus)->required();
	feCmd->add_option("--legs", legs)->required();
	feCmd->add_option("--labels", labels)->check(CLI::Range(1, 4));
	feCmd->add_flag("--abstract", abstractFlag, "emit the abstract graph sum (always on)");
	addFormat(feCmd, {"table", "json"});

	auto *realCmd = app.add_subcommand("realize", "realized free energy W_g");
	realCmd->add_option("--genus", genus)->required();
	realCmd->add_option("--labels", labels)->check(CLI::Range(1, 4));
	addFormat(realCmd, {"table", "json"});

	std::string model = "generic";
	auto *recCmd = app.add_subcommand("recursion", "solve a quadratic recursion");
	recCmd->add_option("--model", model)
	    ->check(CLI::IsMember({"generic", "1d", "airy", "catalan", "stable-count", "graph-count"}))
	    ->required();
	recCmd->add_option("--gmax", gmax)->required();
	addFormat(recCmd, {"table", "json"});

	auto *orCmd = app.add_subcommand("oracle", "compare Wick expansion with graph sums");
	orCmd->add_option("--gmax", gmax)->required();
	orCmd->add_option("--labels", labels)->check(CLI::Range(1, 2));

	auto *tabCmd = app.add_subcommand("tables", "coefficient tables of the counting models");
	tabCmd->add_option("--model", model)
	    ->check(CLI::IsMember({"stable-count", "graph-count"}))
	    ->required();
	tabCmd->add_option("--gmax", gmax)->required();
	addFormat(tabCmd, {"table", "json", "csv"});

	std::string suite = "all";
	auto *chkCmd = app.add_subcommand("check", "run a verification suite");
	chkCmd->add_option("--suite", suite)
	    ->check(CLI::IsMember({"all", "graphs", "operators", "realization", "oracle", "applications"}));

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp &e) {
		return app.exit(e);
	} catch (const CLI::ParseError &e) {
		app.exit(e);
		return 2;
	}

	if (budget > 0)
		Budget::global().weight = budget;

	try {
		if (*enumCmd)
			return runEnumerate(genus, legs, labels, genus0, format);
		if (*feCmd)
			return runFreeEnergy(genus, legs, labels, format);
		if (*realCmd)
			return runRealize(genus, labels, format);
		if (*recCmd)
			return runRecursion(model, gmax, format);
		if (*orCmd)
			return runOracle(gmax, labels);
		if (*tabCmd)
			return runTables(model, gmax, format);
		if (*chkCmd)
			return runCheck(suite);
	} catch (const VerificationError &e) {
		std::cerr << "verification failure: " << e.what() << "\n";
		return 1;
	} catch (const BudgetError &e) {
		std::cerr << "error: " << e.what() << "\n";
		return 2;
	} catch (const std::domain_error &e) {
		std::cerr << "error: " << e.what() << "\n";
		return 2;
	} catch (const std::invalid_argument &e) {
		std::cerr << "error: " << e.what() << "\n";
		return 2;
	}
	return 0;
}
