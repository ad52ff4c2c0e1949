#include "kmforge/functors.hpp"
#include "kmforge/groupquot.hpp"
#include "kmforge/liealg.hpp"
#include "kmforge/oracles.hpp"
#include "kmforge/strip.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using json = nlohmann::json;
using namespace kmforge;

namespace {

const char *kSchema = "kmforge.report/1";

struct Violation
{
};

json num(const Int &x)
{
	static const Int limit("9007199254740991");
	if (abs(x) <= limit)
		return x.get_si();
	return x.get_str();
}

json num(const Rat &x)
{
	if (x.get_den() == 1)
		return num(Int(x.get_num()));
	return x.get_str();
}

json root_json(const RootVec &a) { return json(a); }

json gcm_json(const GCM &A)
{
	json m = json::array();
	for (auto &row : A.matrix())
	{
		json r = json::array();
		for (auto &x : row)
			r.push_back(num(x));
		m.push_back(r);
	}
	return {{"labels", A.labels()}, {"matrix", m}};
}

std::string slurp(const std::string &path)
{
	std::ifstream in(path);
	if (!in)
		throw Error("InvalidInput", "cannot read " + path);
	std::stringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

json parse_json_arg(const std::string &s, const char *what)
{
	std::string text = s;
	size_t k = text.find_first_not_of(" \t\n");
	if (k == std::string::npos)
		throw Error("InvalidInput", std::string("empty ") + what);
	if (text[k] != '[' && text[k] != '{')
		text = slurp(s);
	try
	{
		return json::parse(text);
	}
	catch (const json::exception &e)
	{
		throw Error("InvalidInput", std::string("malformed ") + what + ": " + e.what());
	}
}

GCM parse_gcm(const std::string &s)
{
	json j = parse_json_arg(s, "gcm");
	json m = j;
	std::vector<std::string> labels;
	if (j.is_object())
	{
		if (!j.contains("matrix"))
			throw Error("InvalidInput", "gcm object needs a matrix field");
		m = j["matrix"];
		if (j.contains("labels"))
			for (auto &l : j["labels"])
			{
				if (!l.is_string())
					throw Error("InvalidInput", "labels must be strings");
				labels.push_back(l.get<std::string>());
			}
	}
	if (!m.is_array() || m.empty())
		throw Error("InvalidInput", "gcm matrix must be a nonempty array of rows");
	std::vector<std::vector<Int>> rows;
	for (auto &r : m)
	{
		if (!r.is_array())
			throw Error("InvalidInput", "gcm rows must be arrays");
		std::vector<Int> row;
		for (auto &x : r)
		{
			if (x.is_number_integer())
				row.push_back(Int(std::to_string(x.get<long long>())));
			else if (x.is_string())
			{
				Int v;
				if (v.set_str(x.get<std::string>(), 10) != 0)
					throw Error("InvalidInput", "bad integer " + x.get<std::string>());
				row.push_back(v);
			}
			else
				throw Error("InvalidInput", "gcm entries must be integers");
		}
		rows.push_back(row);
	}
	return validate_gcm(rows, labels);
}

std::vector<RootVec> parse_roots(const std::string &s, int rank)
{
	json j = parse_json_arg(s, "root list");
	std::vector<RootVec> out;
	for (auto &r : j)
	{
		RootVec v = r.get<RootVec>();
		if ((int)v.size() != rank)
			throw Error("InvalidInput", "root has the wrong length");
		out.push_back(v);
	}
	return out;
}

RootVec parse_vec(const std::string &s, int rank)
{
	RootVec v;
	std::stringstream ss(s);
	std::string tok;
	while (std::getline(ss, tok, ','))
	{
		try
		{
			v.push_back(std::stoi(tok));
		}
		catch (...)
		{
			throw Error("InvalidInput", "bad vector entry '" + tok + "'");
		}
	}
	if ((int)v.size() != rank)
		throw Error("InvalidInput", "vector has the wrong length");
	return v;
}

int parse_index(const GCM &A, const std::string &tok)
{
	int k = A.index_of(tok);
	if (k >= 0)
		return k;
	try
	{
		int v = std::stoi(tok);
		if (v >= 1 && v <= A.rank())
			return v - 1;
	}
	catch (...)
	{
	}
	throw Error("InvalidInput", "unknown index '" + tok + "'");
}

std::vector<std::string> word_labels(const GCM &A, const std::vector<int> &w)
{
	std::vector<std::string> out;
	for (int i : w)
		out.push_back(A.labels()[i]);
	return out;
}

struct Options
{
	std::string gcm;
	uint32_t chr = 0;
	int height = 0;
	int max = 0;
	uint32_t q = 0;
	std::string pair;
	std::string out;
	size_t order_cap = 0;
	bool require_indecomposable = false;
	std::string delta;
	std::string kind;
	std::string target;
	std::string betas;
	long a = 0;
	int steps = 0;
};

json cmd_analyze(const Options &o)
{
	GCM A = parse_gcm(o.gcm);
	json r;
	r["gcm"] = gcm_json(A);
	r["indecomposable"] = A.indecomposable();
	if (!A.indecomposable())
	{
		if (o.require_indecomposable)
			throw Error("DecomposableMatrix", "the matrix is decomposable");
		json comps = json::array();
		for (auto &c : A.components())
			comps.push_back(word_labels(A, c));
		r["components"] = comps;
		r["type"] = nullptr;
		r["compact_hyperbolic"] = nullptr;
	}
	else
	{
		r["type"] = to_string(classify_type(A));
		r["compact_hyperbolic"] = is_compact_hyperbolic(A);
	}
	r["symmetric"] = A.is_symmetric();
	auto d = symmetrizer(A);
	r["symmetrizer"] = d ? json(*d) : json(nullptr);
	r["M_A"] = d ? json(m_A(A)) : json(nullptr);
	auto sub = find_affine_sub(A);
	if (sub)
		r["affine_sub"] = {{"subset", word_labels(A, sub->subset)}, {"matrix", gcm_json(sub->B)["matrix"]}};
	else
		r["affine_sub"] = nullptr;
	return r;
}

json cmd_roots(const Options &o)
{
	GCM A = parse_gcm(o.gcm);
	if (o.height < 1)
		throw Error("InvalidInput", "--height must be at least 1");
	BandContext ctx(A, o.height, Scalars::rationals());
	RootTable t = enumerate_roots(ctx, o.height);
	json roots = json::array();
	for (auto &[a, e] : t.entries)
	{
		json x = {{"coeffs", root_json(a)}, {"height", height(a)}, {"mult", e.mult}, {"kind", to_string(e.kind)}};
		if (e.kind == RootKind::Real)
		{
			x["descent_word"] = word_labels(A, e.descent_word);
			x["coroot"] = coroot_of_real(A, a, t);
		}
		roots.push_back(x);
	}
	return {{"gcm", gcm_json(A)}, {"height", o.height}, {"roots", roots}};
}

json cmd_serre_dims(const Options &o)
{
	GCM A = parse_gcm(o.gcm);
	if (o.max < 1)
		throw Error("InvalidInput", "--max must be at least 1");
	json dims = json::array();
	for (auto &x : serre_ideal_dims(A, o.max))
		dims.push_back(num(x));
	return {{"gcm", gcm_json(A)}, {"max", o.max}, {"dims", dims}};
}

json cmd_gk_check(const Options &o)
{
	GCM A = parse_gcm(o.gcm);
	if (o.chr == 0)
		throw Error("InvalidInput", "--char must be a prime");
	RootVec delta = o.delta.empty() ? RootVec(A.rank(), 1) : parse_vec(o.delta, A.rank());
	BandContext ctx(A, height(delta), Scalars::prime(o.chr));
	GKKernel k = gk_degree_kernel(ctx, delta);
	return {{"gcm", gcm_json(A)},      {"char", o.chr},        {"delta", root_json(delta)},
	        {"dim", ctx.dim(delta)},   {"kernel_dim", k.dim},  {"kernel_basis", k.basis},
	        {"gk_simple_in_degree", k.dim == 0}};
}

QuotCtx make_quot(const Options &o, const GCM &A)
{
	if (o.chr == 0)
		throw Error("InvalidInput", "--char must be a prime");
	if (o.height < 1)
		throw Error("InvalidInput", "--height must be at least 1");
	QuotCtx q(A, o.chr, o.height);
	if (o.order_cap)
		q.set_order_cap(o.order_cap);
	return q;
}

json cmd_lcs(const Options &o, bool &ok)
{
	GCM A = parse_gcm(o.gcm);
	QuotCtx q = make_quot(o, A);
	json levels = json::array();
	ok = true;
	for (auto &L : lower_central_series(q))
	{
		levels.push_back({{"n", L.n},
		                  {"order", L.order},
		                  {"coordinate_order", L.coordinate_order},
		                  {"equals_coordinate", L.equals_coordinate}});
		ok &= L.equals_coordinate;
	}
	return {{"gcm", gcm_json(A)}, {"char", o.chr}, {"height", o.height}, {"full_order", q.full().order()},
	        {"levels", levels},   {"holds", ok}};
}

json cmd_zjl(const Options &o, bool &ok)
{
	GCM A = parse_gcm(o.gcm);
	QuotCtx q = make_quot(o, A);
	ZjlReport R = zjl_check(q);
	ok = R.holds;
	return {{"gcm", gcm_json(A)},
	        {"char", o.chr},
	        {"height", o.height},
	        {"dimension_orders", R.dimension_orders},
	        {"lcs_orders", R.lcs_orders},
	        {"coordinate_orders", R.coordinate_orders},
	        {"D_equals_gamma", R.d_equals_gamma},
	        {"chain", R.chain_ok},
	        {"zjl_iso", R.leading_ok && R.bracket_ok && R.p_operation_ok},
	        {"bracket_table", R.bracket_ok},
	        {"p_operation", R.p_operation_ok},
	        {"failure", R.failure}};
}

json strip_coords_json(const StripCoords &c) { return {{"lambda", c.lambda}, {"mu", c.mu}}; }

json cmd_nondensity(const Options &o, bool &ok)
{
	GCM A = parse_gcm(o.gcm);
	if (o.q == 0)
		throw Error("InvalidInput", "--q must be a prime");
	std::string p = o.pair.empty() ? "1,2" : o.pair;
	auto comma = p.find(',');
	if (comma == std::string::npos)
		throw Error("InvalidInput", "--pair takes two indices i,j");
	int i = parse_index(A, p.substr(0, comma)), j = parse_index(A, p.substr(comma + 1));
	NondensityReport R = nondensity_witness(A, o.q, i, j);
	json verdicts = {{"part1", R.part1}, {"part2", R.part2_attempted ? json(R.part2) : json("refused")}};
	ok = R.part1 && (!R.part2_attempted || R.part2);
	return {{"gcm", gcm_json(A)},
	        {"q", o.q},
	        {"pair", {A.labels()[i], A.labels()[j]}},
	        {"ambient_order", R.ambient_order},
	        {"derived_order", R.derived_order},
	        {"uplus_image_order", R.part2_attempted ? json(R.uplus_image_order) : json(nullptr)},
	        {"witness_coords", strip_coords_json(R.witness)},
	        {"verdicts", verdicts},
	        {"part2_refusal", R.part2_refusal},
	        {"simple_roots_only_real", R.part2_attempted ? json(R.roots_confirmed) : json(nullptr)},
	        {"derived_coordinates_linked", R.derived_linked}};
}

json map_json(const GradedLatticeMap &m)
{
	json images = json::array();
	for (int i = 0; i < m.source.rank(); ++i)
	{
		json img;
		switch (m.kind)
		{
		case MapKind::Surjection:
			img = m.image_index[i] >= 0 ? json(m.target.labels()[m.image_index[i]]) : json(nullptr);
			break;
		case MapKind::Subsystem:
			img = root_json(m.betas[i]);
			break;
		case MapKind::Cover:
			img = word_labels(m.target, m.cover.block(i));
			break;
		}
		images.push_back({{"source", m.source.labels()[i]}, {"image", img}});
	}
	return {{"kind", to_string(m.kind)},
	        {"source", gcm_json(m.source)},
	        {"target", gcm_json(m.target)},
	        {"images", images},
	        {"pi_bar", m.pi_bar}};
}

json cmd_functor(const Options &o, bool &ok)
{
	GCM A = parse_gcm(o.gcm);
	int N = o.height > 0 ? o.height : 4;
	Scalars S = o.chr ? Scalars::prime(o.chr) : Scalars::rationals();
	ok = true;
	json r;
	if (o.kind == "surjection")
	{
		if (o.target.empty())
			throw Error("InvalidInput", "surjection needs --target");
		GCM B = parse_gcm(o.target);
		GradedLatticeMap m = make_pi_AB(A, B);
		BandContext ca(A, 2 * N, S), cb(B, 2 * N, S);
		SurjectivityReport sr = surjectivity_report(m, ca, cb);
		json degs = json::array();
		for (auto &d : sr.degrees)
			if (height(d.degree) <= N)
			{
				degs.push_back({{"degree", root_json(d.degree)}, {"target_dim", d.target_dim}, {"image_rank", d.image_rank}});
				ok &= d.image_rank == d.target_dim;
			}
		BandContext ka(A, 2 * N, Scalars::rationals()), kb(B, 2 * N, Scalars::rationals());
		json killed = json::array();
		for (auto &k : kernel_detect(m, ka, kb))
			if (height(k.root) <= N)
				killed.push_back({{"root", root_json(k.root)},
				                  {"image", root_json(k.image)},
				                  {"form_certificate", k.form_certificate},
				                  {"form_source", num(k.form_source)},
				                  {"form_target", num(k.form_target)},
				                  {"zero_certificate", k.zero_certificate}});
		r = {{"map", map_json(m)}, {"height", N}, {"surjectivity", degs}, {"full_rank", ok}, {"killed_real_roots", killed}};
	}
	else if (o.kind == "subsystem")
	{
		if (o.betas.empty())
			throw Error("InvalidInput", "subsystem needs --betas");
		SubsystemResult s = make_subsystem_map(A, parse_roots(o.betas, A.rank()));
		r = {{"map", map_json(s.map)}, {"source_gcm", gcm_json(s.A)}, {"certified_to_height", s.certified_to_height}};
	}
	else if (o.kind == "cover")
	{
		GradedLatticeMap m = make_cover_map(A);
		int NB = 1;
		for (int i = 0; i < A.rank(); ++i)
			for (int j = 0; j < A.rank(); ++j)
				if (i != j)
				{
					RootVec d(A.rank(), 0);
					d[i] = 1 - (int)A.at(i, j);
					d[j] += 1;
					NB = std::max(NB, height(m.apply_degree(d)));
				}
		BandContext cb(m.target, NB, S);
		LieMap L(m, cb);
		json serre = json::array();
		for (int i = 0; i < A.rank(); ++i)
			for (int j = 0; j < A.rank(); ++j)
				if (i != j)
				{
					bool z = L.serre_image(i, j).is_zero();
					ok &= z;
					serre.push_back({{"i", A.labels()[i]}, {"j", A.labels()[j]}, {"image_zero", z}});
				}
		r = {{"map", map_json(m)}, {"serre_images", serre}, {"construction", m.cover.construction}};
	}
	else
		throw Error("InvalidInput", "--kind must be surjection, subsystem or cover");
	r["scalars"] = S.name();
	return r;
}

json cmd_slcover(const Options &o, bool &ok)
{
	GCM A = parse_gcm(o.gcm);
	CoverSpec c = simply_laced_cover(A);
	std::string err = check_cover(A, c);
	ok = err.empty();
	json edges = json::array();
	for (auto &[v, w] : c.edges)
		edges.push_back({c.cover_gcm.labels()[v], c.cover_gcm.labels()[w]});
	json blocks = json::array();
	for (int i = 0; i < A.rank(); ++i)
		blocks.push_back({{"index", A.labels()[i]}, {"vertices", word_labels(c.cover_gcm, c.block(i))}});
	return {{"gcm", gcm_json(A)},         {"block_sizes", c.block_sizes}, {"blocks", blocks},
	        {"edges", edges},             {"cover_gcm", gcm_json(c.cover_gcm)},
	        {"construction", c.construction}, {"invariants_hold", ok}, {"violation", err}};
}

json cmd_funny_chain(const Options &o, bool &ok)
{
	if (o.a < 2)
		throw Error("InvalidInput", "--a must be at least 2");
	if (o.steps < 0)
		throw Error("InvalidInput", "--steps must be nonnegative");
	FunnyChain c = funny_chain(Int(o.a), o.steps);
	json vals = json::array(), steps = json::array();
	for (auto &v : c.values)
		vals.push_back(num(v));
	ok = true;
	for (auto &s : c.steps)
	{
		steps.push_back({{"a", num(s.a)},
		                 {"next", num(s.next)},
		                 {"pairing_12", num(s.pairing12)},
		                 {"pairing_21", num(s.pairing21)},
		                 {"certified", s.certified}});
		ok &= s.certified;
	}
	return {{"a", o.a}, {"steps", o.steps}, {"values", vals}, {"certificates", steps}};
}

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"Kac-Moody algebra and unipotent group toolkit"};
	app.require_subcommand(1);
	Options o;
	auto common = [&](CLI::App *c, bool needs_gcm) {
		auto *g = c->add_option("--gcm", o.gcm, "matrix as JSON, {labels, matrix}, or a file path");
		if (needs_gcm)
			g->required();
		c->add_option("--out", o.out, "write the report to this file");
		return c;
	};
	auto *analyze = common(app.add_subcommand("analyze", "type, symmetrizer and affine submatrix"), true);
	analyze->add_flag("--require-indecomposable", o.require_indecomposable);
	auto *roots = common(app.add_subcommand("roots", "root table up to a height"), true);
	roots->add_option("--height", o.height)->required();
	auto *serre = common(app.add_subcommand("serre-dims", "Serre ideal dimensions by total degree"), true);
	serre->add_option("--max", o.max)->required();
	auto *gk = common(app.add_subcommand("gk-check", "kernel of the lowering operators in one degree"), true);
	gk->add_option("--char", o.chr)->required();
	gk->add_option("--delta", o.delta, "degree as comma separated coordinates");
	auto *lcs = common(app.add_subcommand("lcs", "lower central series of the finite quotient"), true);
	auto *zjl = common(app.add_subcommand("zjl", "dimension subgroups and their Lie algebra"), true);
	for (auto *c : {lcs, zjl})
	{
		c->add_option("--char", o.chr)->required();
		c->add_option("--height", o.height)->required();
		c->add_option("--order-cap", o.order_cap);
	}
	auto *nd = common(app.add_subcommand("nondensity", "strip-level non-density certificates"), true);
	nd->add_option("--q", o.q)->required();
	nd->add_option("--pair", o.pair, "indices i,j (labels or 1-based)");
	auto *fn = common(app.add_subcommand("functor", "surjection, subsystem or cover maps"), true);
	fn->add_option("--kind", o.kind)->required();
	fn->add_option("--target", o.target);
	fn->add_option("--betas", o.betas);
	fn->add_option("--height", o.height);
	fn->add_option("--char", o.chr);
	auto *sl = common(app.add_subcommand("slcover", "simply laced cover"), true);
	auto *fc = common(app.add_subcommand("funny-chain", "iterated subsystem embeddings"), false);
	fc->add_option("--a", o.a)->required();
	fc->add_option("--steps", o.steps)->required();

	try
	{
		app.parse(argc, argv);
	}
	catch (const CLI::ParseError &e)
	{
		int rc = app.exit(e);
		return rc == 0 ? 0 : 2;
	}

	json report;
	bool ok = true;
	int rc = 0;
	CLI::App *sub = app.get_subcommands().front();
	std::string name = sub->get_name();
	try
	{
		if (name == "analyze")
			report = cmd_analyze(o);
		else if (name == "roots")
			report = cmd_roots(o);
		else if (name == "serre-dims")
			report = cmd_serre_dims(o);
		else if (name == "gk-check")
			report = cmd_gk_check(o);
		else if (name == "lcs")
			report = cmd_lcs(o, ok);
		else if (name == "zjl")
			report = cmd_zjl(o, ok);
		else if (name == "nondensity")
			report = cmd_nondensity(o, ok);
		else if (name == "functor")
			report = cmd_functor(o, ok);
		else if (name == "slcover")
			report = cmd_slcover(o, ok);
		else if (name == "funny-chain")
			report = cmd_funny_chain(o, ok);
		rc = ok ? 0 : 1;
		report["status"] = ok ? "ok" : "violated";
	}
	catch (const Error &e)
	{
		report = {{"status", "error"}, {"error", {{"code", e.code}, {"message", e.what()}}}};
		std::cerr << e.what() << "\n";
		rc = 2;
	}
	catch (const std::exception &e)
	{
		report = {{"status", "error"}, {"error", {{"code", "Internal"}, {"message", e.what()}}}};
		std::cerr << e.what() << "\n";
		rc = 2;
	}
	report["schema"] = kSchema;
	report["command"] = name;
	std::string text = report.dump(2) + "\n";
	if (!o.out.empty())
	{
		std::ofstream f(o.out);
		if (!f)
		{
			std::cerr << "cannot write " << o.out << "\n";
			return 2;
		}
		f << text;
	}
	else
		std::cout << text;
	return rc;
}
