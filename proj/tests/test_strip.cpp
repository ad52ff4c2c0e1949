#include "doctest.h"

#include "kmforge/strip.hpp"

#include <functional>
#include <set>

using namespace kmforge;

namespace {

std::string error_code(const std::function<void()> &f)
{
	try
	{
		f();
	}
	catch (const Error &e)
	{
		return e.code;
	}
	return "";
}

uint32_t binom_mod(int n, int k, uint32_t q)
{
	if (k < 0 || k > n)
		return 0;
	unsigned long long r = 1;
	for (int t = 1; t <= k; ++t)
		r = r * (n - k + t) / t;
	return (uint32_t)(r % q);
}

// e_i^(a) e_j e_i^(b) words; the product of two words is a word or zero
StripElt word_product(const StripCtx &S, int x, int y)
{
	auto [mx, nx] = S.degree(x);
	auto [my, ny] = S.degree(y);
	int Q = (int)S.q();
	StripElt r = S.zero();
	if (nx + ny > 1 || mx + my > Q)
		return r;
	if (nx == 0 && ny == 0)
		r[S.E(mx + my)] = binom_mod(mx + my, mx, S.q());
	else if (nx == 0)
	{
		int a = mx, b = 0;
		for (int t = 0; t <= Q; ++t)
			for (int u = 0; t + u <= Q; ++u)
				if (S.F(t, u) == y)
					a += t, b = u;
		r[S.F(a, b)] = binom_mod(a, mx, S.q());
	}
	else
	{
		int a = 0, b = my;
		for (int t = 0; t <= Q; ++t)
			for (int u = 0; t + u <= Q; ++u)
				if (S.F(t, u) == x)
					a = t, b += u;
		r[S.F(a, b)] = binom_mod(b, my, S.q());
	}
	return r;
}

std::set<StripElt> closure(const StripCtx &S, const std::vector<StripElt> &gens)
{
	std::set<StripElt> H{S.one()};
	std::vector<StripElt> queue{S.one()};
	while (!queue.empty())
	{
		StripElt x = queue.back();
		queue.pop_back();
		for (auto &g : gens)
		{
			StripElt y = S.mul(x, g);
			if (H.insert(y).second)
				queue.push_back(y);
		}
	}
	return H;
}

} // namespace

TEST_CASE("strip products follow divided-power combinatorics")
{
	for (auto [M, q] : std::vector<std::pair<std::vector<std::vector<long>>, uint32_t>>{
	         {{{2, -3}, {-2, 2}}, 2}, {{{2, -4}, {-2, 2}}, 3}, {{{2, -5}, {-1, 2}}, 5}})
	{
		StripCtx S(make_gcm(M), 0, 1, q);
		CHECK(S.dim() == (int)(q + 1) + (int)((q + 1) * (q + 2) / 2));
		for (int x = 0; x < S.dim(); ++x)
			for (int y = 0; y < S.dim(); ++y)
				CHECK(S.mul(S.basis(x), S.basis(y)) == word_product(S, x, y));
		for (int x = 0; x < S.dim(); ++x)
			for (int y = 0; y < S.dim(); ++y)
				for (int z = 0; z < S.dim(); ++z)
					CHECK(S.mul(S.mul(S.basis(x), S.basis(y)), S.basis(z)) == S.mul(S.basis(x), S.mul(S.basis(y), S.basis(z))));
	}
}

TEST_CASE("strip examples")
{
	StripCtx S(make_gcm({{2, -3}, {-2, 2}}), 0, 1, 2);
	CHECK(S.mul(S.basis(S.E(1)), S.basis(S.E(1))) == S.basis(S.E(2), 0));
	CHECK(S.mul(S.basis(S.E(1)), S.basis(S.F(0, 0))) == S.basis(S.F(1, 0)));
	CHECK(S.mul(S.basis(S.F(0, 1)), S.basis(S.E(1))) == S.basis(S.F(0, 2), 0));
	CHECK(S.mul(S.basis(S.F(0, 0)), S.basis(S.F(0, 0))) == S.zero());
	// (ad e_i)^(s) e_j = sum (-1)^t e_i^(s-t) e_j e_i^(t)
	CHECK(S.x(1) == S.add(S.basis(S.F(1, 0)), S.basis(S.F(0, 1), 1)));
	CHECK(S.mul(S.inverse(S.glambda({1, {1, 0, 1}})), S.glambda({1, {1, 0, 1}})) == S.one());
	CHECK(error_code([] { StripCtx(make_gcm({{2, -1}, {-1, 2}}), 0, 1, 2); }) == "HypothesisViolated");
}

TEST_CASE("group-like elements of the strip")
{
	StripCtx S(make_gcm({{2, -3}, {-2, 2}}), 0, 1, 2);
	std::set<StripElt> brute;
	size_t total = 1;
	for (int k = 1; k < S.dim(); ++k)
		total *= 2;
	for (size_t code = 0; code < total; ++code)
	{
		StripElt u = S.one();
		for (int k = 1; k < S.dim(); ++k)
			u[k] = (code >> (k - 1)) & 1;
		if (S.is_grouplike(u))
			brute.insert(u);
	}
	CHECK(brute.size() == 16);
	std::set<StripElt> param;
	for (auto &c : S.all_coords())
		param.insert(S.glambda(c));
	CHECK(param == brute);
	CHECK(error_code([&] { S.normal_form(S.add(S.one(), S.basis(S.F(0, 0)))); }).empty());
	CHECK(error_code([&] { S.normal_form(S.add(S.one(), S.basis(S.E(2)))); }) == "NotGroupLike");

	for (auto [M, q] : std::vector<std::pair<std::vector<std::vector<long>>, uint32_t>>{
	         {{{2, -4}, {-2, 2}}, 3}, {{{2, -5}, {-1, 2}}, 5}})
	{
		StripCtx T(make_gcm(M), 0, 1, q);
		auto coords = T.all_coords();
		size_t expect = 1;
		for (uint32_t k = 0; k < q + 2; ++k)
			expect *= q;
		CHECK(coords.size() == expect);
		std::set<StripElt> seen;
		for (auto &c : coords)
		{
			StripElt g = T.glambda(c);
			CHECK(T.is_grouplike(g));
			CHECK(T.normal_form(g) == c);
			seen.insert(g);
		}
		CHECK(seen.size() == expect);
	}
}

TEST_CASE("commutators in the strip")
{
	for (auto [M, q] : std::vector<std::pair<std::vector<std::vector<long>>, uint32_t>>{
	         {{{2, -3}, {-2, 2}}, 2}, {{{2, -4}, {-2, 2}}, 3}})
	{
		StripCtx S(make_gcm(M), 0, 1, q);
		auto coords = S.all_coords();
		for (size_t a = 0; a < coords.size(); a += 3)
			for (size_t b = 0; b < coords.size(); b += 5)
			{
				StripCoords c = S.commutator_coords(coords[a], coords[b]);
				CHECK(c.lambda == 0);
				CHECK(c.mu[0] == 0);
				CHECK(S.glambda(c) == S.commutator(S.glambda(coords[a]), S.glambda(coords[b])));
				CHECK(S.commutator_coords(coords[a], coords[a]) == StripCoords{0, std::vector<uint32_t>(q + 1, 0)});
			}
		C1CqReport R = check_c1_cq(S);
		CHECK(R.pairs == coords.size() * coords.size());
		CHECK(R.violations == 0);
		CHECK(R.formula_violations == 0);
	}
}

TEST_CASE("non-density certificates")
{
	for (auto [M, q, order] : std::vector<std::tuple<std::vector<std::vector<long>>, uint32_t, size_t>>{
	         {{{2, -3}, {-2, 2}}, 2, 16}, {{{2, -4}, {-2, 2}}, 3, 243}})
	{
		GCM A = make_gcm(M);
		NondensityReport R = nondensity_witness(A, q, 0, 1);
		CHECK(R.ambient_order == order);
		CHECK(R.part1);
		CHECK(R.part2_attempted);
		CHECK(R.part2);
		CHECK(R.roots_confirmed);
		CHECK(R.derived_linked);

		// independent recomputation of both subgroups
		StripCtx S(A, 0, 1, q);
		std::vector<StripElt> all;
		for (auto &c : S.all_coords())
			all.push_back(S.glambda(c));
		std::set<StripElt> cs;
		for (auto &g : all)
			for (auto &h : all)
				cs.insert(S.commutator(g, h));
		auto derived = closure(S, {cs.begin(), cs.end()});
		CHECK(derived.size() == R.derived_order);
		StripElt w = S.glambda(R.witness);
		CHECK_FALSE(derived.count(w));
		for (auto &d : derived)
		{
			StripCoords c = S.normal_form(d);
			CHECK((c.mu[1] == 0) == (c.mu[q] == 0));
		}
		std::vector<StripElt> simple;
		for (uint32_t l = 1; l < q; ++l)
		{
			std::vector<uint32_t> mu(q + 1, 0), none(q + 1, 0);
			mu[0] = l;
			simple.push_back(S.glambda({l, none}));
			simple.push_back(S.glambda({0, mu}));
		}
		auto uplus = closure(S, simple);
		CHECK(uplus.size() == R.uplus_image_order);
		CHECK_FALSE(uplus.count(w));
		CHECK(R.witness.lambda == 0);
		CHECK(R.witness.mu[0] == 0);
		CHECK(R.witness.mu[1] != 0);
	}
}

TEST_CASE("non-density refusals")
{
	NondensityReport R = nondensity_witness(make_gcm({{2, -2}, {-2, 2}}), 2, 0, 1);
	CHECK(R.part1);
	CHECK_FALSE(R.part2_attempted);
	CHECK_FALSE(R.part2_refusal.empty());
	NondensityReport T = nondensity_witness(make_gcm({{2, -3}, {-1, 2}}), 2, 0, 1);
	CHECK(T.part1);
	CHECK_FALSE(T.part2_attempted);
	CHECK_FALSE(T.part2_refusal.empty());
	CHECK(error_code([] { nondensity_witness(make_gcm({{2, -2}, {-2, 2}}), 3, 0, 1); }) == "HypothesisViolated");
	NondensityReport U = nondensity_witness(make_gcm({{2, -3, 0}, {-2, 2, -1}, {0, -1, 2}}), 2, 0, 1);
	CHECK(U.part1);
}
