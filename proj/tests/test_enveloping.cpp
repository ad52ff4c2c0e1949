#include "doctest.h"

#include "kmforge/enveloping.hpp"

#include <random>

using namespace kmforge;

namespace {

EnvElement random_element(TruncCtx &U, std::mt19937 &rng, int terms, bool with_constant = true)
{
	auto monos = U.all_monomials();
	std::uniform_int_distribution<size_t> pick(0, monos.size() - 1);
	std::uniform_int_distribution<int> coeff(-4, 4);
	EnvElement u = with_constant ? U.scale(coeff(rng), U.one()) : EnvElement{};
	for (int t = 0; t < terms; ++t)
		u = U.add(u, U.mono(monos[pick(rng)], coeff(rng)));
	return u;
}

Tensor tensor_add(TruncCtx &U, const Tensor &a, const Tensor &b, const Rat &c = 1)
{
	Tensor t = a;
	for (auto &[k, v] : b)
		t[k] += c * v;
	Tensor out;
	for (auto &[k, v] : t)
		if (U.scalars().norm(v) != 0)
			out[k] = U.scalars().norm(v);
	return out;
}

EnvElement exp_basis(TruncCtx &U, int id, const Rat &lambda)
{
	return U.twisted_exp(U.band().basis_element(U.basis_degree(id), U.basis_slot(id)), lambda);
}

std::vector<Rat> random_coords(TruncCtx &U, std::mt19937 &rng)
{
	std::uniform_int_distribution<int> coeff(-3, 3);
	std::vector<Rat> c(U.num_basis());
	for (auto &x : c)
		x = U.scalars().norm(coeff(rng));
	return c;
}

} // namespace

TEST_CASE("characteristic constraint")
{
	GCM A = make_gcm({{2, -1}, {-1, 2}});
	CHECK_THROWS_AS(TruncCtx(A, 5, Scalars::prime(5)), Error);
	CHECK_THROWS_AS(TruncCtx(A, 3, Scalars::integers()), Error);
	CHECK_NOTHROW(TruncCtx(A, 4, Scalars::prime(5)));
}

TEST_CASE("straightening and divided powers")
{
	GCM A = make_gcm({{2, -1}, {-1, 2}});
	TruncCtx U(A, 3, Scalars::rationals());
	BandContext &L = U.band();
	EnvElement e1 = U.from_lie(L.e(0)), e2 = U.from_lie(L.e(1));
	EnvElement comm = U.from_lie(L.bracket(L.e(0), L.e(1)));
	CHECK(U.mul(e2, e1) == U.add(U.mul(e1, e2), U.scale(-1, comm)));
	CHECK(U.mul(e1, U.one()) == e1);
	CHECK(U.mul(U.one(), e2) == e2);
	TruncCtx V(make_gcm({{2, -2}, {-2, 2}}), 6, Scalars::rationals());
	for (int a = 1; a <= 3; ++a)
		for (int b = 1; a + b <= 6; ++b)
			CHECK(V.mul(V.mono({{0, a}}), V.mono({{0, b}})) == V.mono({{0, a + b}}, Rat(binomial(a + b, a))));
}

TEST_CASE("multiplication is associative and graded")
{
	std::mt19937 rng(1);
	for (auto S : {Scalars::rationals(), Scalars::prime(7)})
		for (auto M : {std::vector<std::vector<long>>{{2, -1}, {-1, 2}}, {{2, -2}, {-2, 2}}})
		{
			TruncCtx U(make_gcm(M), 4, S);
			for (int t = 0; t < 100; ++t)
			{
				EnvElement a = random_element(U, rng, 3), b = random_element(U, rng, 3), c = random_element(U, rng, 3);
				CHECK(U.mul(U.mul(a, b), c) == U.mul(a, U.mul(b, c)));
			}
			auto monos = U.all_monomials();
			for (size_t s = 0; s < monos.size(); s += 3)
				for (size_t r = 0; r < monos.size(); r += 5)
					for (auto &[m, c] : U.mul(U.mono(monos[s]), U.mono(monos[r])).terms)
						CHECK(U.degree(m) == add(U.degree(monos[s]), U.degree(monos[r])));
		}
}

TEST_CASE("coproduct and antipode on divided powers")
{
	TruncCtx U(make_gcm({{2, -2}, {-2, 2}}), 4, Scalars::rationals());
	Mono e = {{0, 1}}, e2 = {{0, 2}}, e3 = {{0, 3}}, one = {};
	CHECK(U.coproduct(U.mono(e)) == Tensor{{{e, one}, 1}, {{one, e}, 1}});
	CHECK(U.coproduct(U.mono(e2)) == Tensor{{{e2, one}, 1}, {{e, e}, 1}, {{one, e2}, 1}});
	CHECK(U.antipode(U.mono(e3)) == U.mono(e3, -1));
	CHECK(U.antipode(U.mono(e2)) == U.mono(e2));
}

TEST_CASE("Hopf algebra identities at truncation")
{
	std::mt19937 rng(2);
	for (auto S : {Scalars::rationals(), Scalars::prime(7)})
	{
		TruncCtx U(make_gcm({{2, -3}, {-2, 2}}), 4, S);
		for (int t = 0; t < 40; ++t)
		{
			EnvElement a = random_element(U, rng, 3), b = random_element(U, rng, 3);
			CHECK(U.coproduct(U.mul(a, b)) == U.tensor_mul(U.coproduct(a), U.coproduct(b)));
			EnvElement left;
			for (auto &[k, c] : U.coproduct(a))
				if (k.first.empty())
					left = U.add(left, U.mono(k.second, c));
			CHECK(left == a);
			EnvElement s = U.mul_tensor(U.coproduct(a), true);
			CHECK(s == U.scale(U.counit(a), U.one()));
			CHECK(U.antipode(U.mul(a, b)) == U.mul(U.antipode(b), U.antipode(a)));
		}
	}
}

TEST_CASE("group-like elements")
{
	TruncCtx U(make_gcm({{2, -1}, {-1, 2}}), 4, Scalars::prime(5));
	BandContext &L = U.band();
	EnvElement g = U.twisted_exp(L.e(0), 2), h = U.twisted_exp(L.e(1), 3);
	CHECK(U.is_grouplike(g));
	CHECK(U.is_grouplike(U.mul(g, h)));
	CHECK(U.mul(g, U.inverse(g)) == U.one());
	CHECK(U.is_grouplike(U.inverse(U.mul(g, h))));
	EnvElement bad = U.add(U.one(), U.from_lie(L.e(0) + L.e(1)));
	CHECK_FALSE(U.is_grouplike(bad));
	CHECK_FALSE(U.is_grouplike(U.scale(2, U.one())));
	std::mt19937 rng(3);
	for (int t = 0; t < 30; ++t)
	{
		EnvElement x = U.from_coords(random_coords(U, rng)), y = U.from_coords(random_coords(U, rng));
		CHECK(U.is_grouplike(U.mul(x, y)));
		CHECK(U.mul(U.inverse(x), x) == U.one());
	}
}

TEST_CASE("twisted exponentials")
{
	TruncCtx U(make_gcm({{2, -2}, {-2, 2}}), 5, Scalars::rationals());
	BandContext &L = U.band();
	for (int id = 0; id < U.num_basis(); ++id)
	{
		LieElement x = L.basis_element(U.basis_degree(id), U.basis_slot(id));
		CHECK(U.twisted_exp(x, 0) == U.one());
		CHECK(U.mul(U.twisted_exp(x, 2), U.twisted_exp(x, Rat(-1, 3))) == U.twisted_exp(x, Rat(5, 3)));
		CHECK(U.is_grouplike(U.twisted_exp(x, 7)));
		// exponential sequence x^[n] = x^n / n!
		EnvElement X = U.from_lie(x), pw = U.one();
		std::vector<EnvElement> seq{U.one()};
		for (int n = 1; n * height(U.basis_degree(id)) <= U.N(); ++n)
		{
			pw = U.scale(Rat(1, n), U.mul(pw, X));
			seq.push_back(pw);
		}
		CHECK(seq[1] == X);
		for (size_t n = 0; n < seq.size(); ++n)
		{
			for (auto &[m, c] : seq[n].terms)
				CHECK(U.degree(m) == scale(U.basis_degree(id), (int)n));
			Tensor expect;
			for (size_t k = 0; k <= n; ++k)
				expect = tensor_add(U, expect, U.tensor(seq[k], seq[n - k]));
			CHECK(U.coproduct(seq[n]) == expect);
		}
	}
	RootVec alpha{2, 1};
	LieElement ea = L.real_root_vector(alpha);
	EnvElement xa = U.twisted_exp(ea, 3);
	EnvElement manual = U.add(U.one(), U.add(U.scale(3, U.from_lie(ea)), U.scale(Rat(9, 2), U.mul(U.from_lie(ea), U.from_lie(ea)))));
	CHECK(xa == manual);
}

TEST_CASE("normal form")
{
	GCM A = make_gcm({{2, -1}, {-1, 2}});
	TruncCtx U(A, 2, Scalars::rationals());
	BandContext &L = U.band();
	REQUIRE(U.num_basis() == 3);
	EnvElement g = U.mul(U.twisted_exp(L.e(0), 1), U.twisted_exp(L.e(1), 1));
	CHECK(U.normal_form(g) == std::vector<Rat>{1, 1, 0});
	// e2 e1 = e1 e2 - [e1, e2] and [e1, e2] = k x for the basis vector x
	LieElement c = L.bracket(L.e(0), L.e(1));
	Rat k = c.pos.at({1, 1})[0];
	EnvElement h = U.mul(U.twisted_exp(L.e(1), 1), U.twisted_exp(L.e(0), 1));
	CHECK(U.normal_form(h) == std::vector<Rat>{1, 1, -k});
	CHECK(U.normal_form(exp_basis(U, 2, 5)) == std::vector<Rat>{0, 0, 5});
	CHECK_THROWS_AS(U.normal_form(U.add(U.one(), U.from_lie(L.e(0)))), Error);
	std::mt19937 rng(4);
	for (auto M : {std::vector<std::vector<long>>{{2, -1}, {-1, 2}}, {{2, -2}, {-2, 2}}})
	{
		TruncCtx V(make_gcm(M), 4, Scalars::prime(7));
		for (int t = 0; t < 100; ++t)
		{
			auto c0 = random_coords(V, rng);
			CHECK(V.normal_form(V.from_coords(c0)) == c0);
		}
	}
}

TEST_CASE("s_i* on the enveloping algebra")
{
	GCM A = make_gcm({{2, -2}, {-2, 2}});
	TruncCtx U(A, 5, Scalars::rationals());
	BandContext &L = U.band();
	EnvElement img = U.s_i_star(0, U.from_lie(L.e(1)));
	CHECK(img == U.from_lie(L.s_i_star(0, L.e(1))));
	for (auto &[m, c] : img.terms)
		CHECK(U.degree(m) == RootVec{2, 1});
	CHECK_THROWS_AS(U.s_i_star(0, U.from_lie(L.e(0))), Error);
	std::mt19937 rng(6);
	auto monos = U.all_monomials();
	for (int i = 0; i < 2; ++i)
	{
		std::vector<Mono> allowed;
		for (auto &m : monos)
			if (std::none_of(m.begin(), m.end(), [&](auto &f) { return U.basis_degree(f.first) == simple_root(2, i); }))
				allowed.push_back(m);
		std::uniform_int_distribution<size_t> pick(0, allowed.size() - 1);
		for (int t = 0; t < 20; ++t)
		{
			EnvElement u = U.scale(t % 3, U.one());
			for (int s = 0; s < 3; ++s)
				u = U.add(u, U.mono(allowed[pick(rng)], s + 1));
			EnvElement su = U.s_i_star(i, u);
			CHECK(U.counit(su) == U.counit(u));
			for (auto &[m, c] : su.terms)
			{
				bool graded = false;
				for (auto &[n, d] : u.terms)
					graded |= U.degree(m) == reflect_root(A, i, U.degree(n)) || (m.empty() && n.empty());
				CHECK(graded);
			}
			Tensor rhs;
			for (auto &[ab, c] : U.coproduct(u))
			{
				Tensor part = U.tensor(U.s_i_star(i, U.mono(ab.first)), U.s_i_star(i, U.mono(ab.second)));
				rhs = tensor_add(U, rhs, part, c);
			}
			CHECK(U.coproduct(su) == rhs);
			EnvElement v = U.mono(allowed[pick(rng)]), w = U.mono(allowed[pick(rng)]);
			if (U.height(U.mul(v, w).terms.empty() ? Mono{} : U.mul(v, w).terms.begin()->first) <= U.N())
				CHECK(U.s_i_star(i, U.mul(v, w)) == U.mul(U.s_i_star(i, v), U.s_i_star(i, w)));
		}
	}
}

TEST_CASE("membership in the subalgebra of a closed set")
{
	GCM A = make_gcm({{2, -2}, {-2, 2}});
	TruncCtx U(A, 4, Scalars::rationals());
	RootTable t = enumerate_roots(U.band(), 4);
	std::vector<RootVec> psi2;
	for (auto &[a, e] : t.entries)
		if (height(a) >= 2)
			psi2.push_back(a);
	EnvElement u = exp_basis(U, 2, 1);
	CHECK(U.restrict_to(psi2, u));
	CHECK(U.restrict_to(psi2, U.mul(u, exp_basis(U, 3, 2))));
	CHECK_FALSE(U.restrict_to(psi2, U.from_lie(U.band().e(0))));
	CHECK_THROWS_AS(U.restrict_to({{1, 0}, {0, 1}}, u), Error);
}
