#include "doctest.h"

#include "kmforge/gcm.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

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

// all GCMs of the given rank with entries in [floor, 0]
std::vector<GCM> all_gcms(int rank, long floor)
{
	std::vector<std::pair<int, int>> pairs;
	for (int i = 0; i < rank; ++i)
		for (int j = i + 1; j < rank; ++j)
			pairs.push_back({i, j});
	// choice per pair: (0,0) or (-a,-b) with a,b in 1..-floor
	long k = -floor;
	long per = 1 + k * k;
	long total = 1;
	for (size_t t = 0; t < pairs.size(); ++t)
		total *= per;
	std::vector<GCM> out;
	for (long code = 0; code < total; ++code)
	{
		std::vector<std::vector<long>> m(rank, std::vector<long>(rank, 0));
		for (int i = 0; i < rank; ++i)
			m[i][i] = 2;
		long c = code;
		for (auto [i, j] : pairs)
		{
			long v = c % per;
			c /= per;
			if (v == 0)
				continue;
			--v;
			m[i][j] = -(1 + v / k);
			m[j][i] = -(1 + v % k);
		}
		out.push_back(make_gcm(m));
	}
	return out;
}

// independent rank-2 classification by the product of off-diagonal entries
KacType rank2_type(const GCM &A)
{
	long p = A.at(0, 1) * A.at(1, 0);
	return p < 4 ? KacType::Finite : p == 4 ? KacType::Affine : KacType::Indefinite;
}

} // namespace

TEST_CASE("validate_gcm accepts and rejects by axiom")
{
	CHECK_NOTHROW(make_gcm({{2, -3}, {-2, 2}}));
	CHECK(error_code([] { make_gcm({{2, -1}, {0, 2}}); }) == "AsymmetricZero");
	CHECK(error_code([] { make_gcm({{1}}); }) == "DiagonalNotTwo");
	CHECK(error_code([] { make_gcm({{2, 1}, {-1, 2}}); }) == "PositiveOffDiagonal");
	CHECK(error_code([] { make_gcm({{2, -1}}); }) == "InvalidInput");
	GCM A = make_gcm({{2, -1}, {-1, 2}});
	CHECK(A.labels() == std::vector<std::string>{"1", "2"});
}

TEST_CASE("validate_gcm agrees with an entrywise re-check")
{
	std::mt19937 rng(7);
	std::uniform_int_distribution<int> entry(-3, 3);
	for (int t = 0; t < 500; ++t)
	{
		int n = 1 + t % 3;
		std::vector<std::vector<Int>> m(n, std::vector<Int>(n));
		for (auto &row : m)
			for (auto &x : row)
				x = entry(rng);
		if (t % 2)
			for (int i = 0; i < n; ++i)
				m[i][i] = 2;
		bool ok = true;
		for (int i = 0; i < n; ++i)
			for (int j = 0; j < n; ++j)
			{
				if (i == j && m[i][j] != 2)
					ok = false;
				if (i != j && m[i][j] > 0)
					ok = false;
				if (i != j && (m[i][j] == 0) != (m[j][i] == 0))
					ok = false;
			}
		bool accepted = true;
		try
		{
			validate_gcm(m);
		}
		catch (const Error &)
		{
			accepted = false;
		}
		CHECK(accepted == ok);
	}
}

TEST_CASE("big entries are kept exactly")
{
	Int big("-123456789012345678901234567890");
	GCM A = validate_gcm({{2, big}, {-1, 2}});
	CHECK(A.entry(0, 1) == big);
}

TEST_CASE("gcm_leq examples")
{
	GCM B = make_gcm({{2, -2}, {-2, 2}}), A = make_gcm({{2, -3}, {-2, 2}});
	CHECK(gcm_leq(B, A));
	CHECK(gcm_leq(A, A));
	CHECK_FALSE(gcm_leq(make_gcm({{2, -3}, {-3, 2}}), B));
	// a rank-1 matrix embeds at any index
	CHECK(gcm_leq(make_gcm({{2}}), A, {1}));
}

TEST_CASE("gcm_leq is a partial order on random rank-3 matrices")
{
	auto all = all_gcms(3, -2);
	std::mt19937 rng(11);
	std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
	for (int t = 0; t < 3000; ++t)
	{
		const GCM &a = all[pick(rng)], &b = all[pick(rng)], &c = all[pick(rng)];
		CHECK(gcm_leq(a, a));
		if (gcm_leq(a, b) && gcm_leq(b, a))
			CHECK(a == b);
		if (gcm_leq(a, b) && gcm_leq(b, c))
			CHECK(gcm_leq(a, c));
	}
}

TEST_CASE("classify_type examples and rank-2 oracle")
{
	CHECK(classify_type(make_gcm({{2, -1}, {-1, 2}})) == KacType::Finite);
	CHECK(classify_type(make_gcm({{2, -2}, {-2, 2}})) == KacType::Affine);
	CHECK(classify_type(make_gcm({{2, -3}, {-2, 2}})) == KacType::Indefinite);
	CHECK(classify_type(make_gcm({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}})) == KacType::Finite);
	CHECK(classify_type(make_gcm({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}})) == KacType::Affine);
	CHECK_THROWS_AS(classify_type(make_gcm({{2, 0}, {0, 2}})), Error);
	for (auto &A : all_gcms(2, -5))
		if (A.indecomposable())
			CHECK(classify_type(A) == rank2_type(A));
}

TEST_CASE("is_compact_hyperbolic examples")
{
	CHECK(is_compact_hyperbolic(make_gcm({{2, -3}, {-2, 2}})));
	CHECK_FALSE(is_compact_hyperbolic(make_gcm({{2, -1}, {-1, 2}})));
	CHECK_FALSE(is_compact_hyperbolic(make_gcm({{2, -2}, {-2, 2}})));
	// contains the affine A1^(1) diagram on {1,2}
	CHECK_FALSE(is_compact_hyperbolic(make_gcm({{2, -2, 0}, {-2, 2, -1}, {0, -1, 2}})));
}

TEST_CASE("find_affine_sub examples")
{
	auto s = find_affine_sub(make_gcm({{2, -3}, {-2, 2}}));
	REQUIRE(s);
	CHECK(s->B == make_gcm({{2, -2}, {-2, 2}}));
	auto t = find_affine_sub(make_gcm({{2, -2}, {-2, 2}}));
	REQUIRE(t);
	CHECK(t->B == make_gcm({{2, -2}, {-2, 2}}));
	CHECK_FALSE(find_affine_sub(make_gcm({{2, -1}, {-1, 2}})));
}

TEST_CASE("find_affine_sub on every rank-2 indefinite matrix down to -5")
{
	int seen = 0;
	for (auto &A : all_gcms(2, -5))
	{
		if (!A.indecomposable() || classify_type(A) != KacType::Indefinite)
			continue;
		++seen;
		auto s = find_affine_sub(A);
		REQUIRE(s);
		CHECK(classify_type(s->B) == KacType::Affine);
		CHECK(gcm_leq(s->B, A, s->subset));
	}
	CHECK(seen == 25 - 8);
}

TEST_CASE("symmetrizer and M_A")
{
	CHECK(*symmetrizer(make_gcm({{2, -1}, {-2, 2}})) == std::vector<long>{2, 1});
	CHECK(*symmetrizer(make_gcm({{2, -3}, {-3, 2}})) == std::vector<long>{1, 1});
	CHECK_FALSE(symmetrizer(make_gcm({{2, -1, -2}, {-2, 2, -1}, {-1, -2, 2}})));
	CHECK(m_A(make_gcm({{2, -3}, {-2, 2}})) == 3);
	CHECK(m_A(make_gcm({{2, -1}, {-1, 2}})) == 1);
	CHECK(m_A(make_gcm({{2}})) == 0);
	for (auto &A : all_gcms(3, -3))
	{
		auto d = symmetrizer(A);
		if (!d)
			continue;
		for (int i = 0; i < 3; ++i)
			for (int j = 0; j < 3; ++j)
				CHECK((*d)[i] * A.at(i, j) == (*d)[j] * A.at(j, i));
	}
}

TEST_CASE("simply_laced_cover examples")
{
	CoverSpec c = simply_laced_cover(make_gcm({{2, -1}, {-2, 2}}));
	CHECK(c.block_sizes == std::vector<long>{1, 2});
	CHECK(c.edges.size() == 2);
	CHECK(c.cover_gcm.labels() == std::vector<std::string>{"1.1", "2.1", "2.2"});
	CoverSpec d = simply_laced_cover(make_gcm({{2, -2}, {-2, 2}}));
	CHECK(d.block_sizes == std::vector<long>{2, 2});
	CHECK(d.edges.size() == 4);
	CHECK(classify_type(d.cover_gcm) == KacType::Affine);
	CoverSpec e = simply_laced_cover(make_gcm({{2, -1}, {-1, 2}}));
	CHECK(e.cover_gcm == make_gcm({{2, -1}, {-1, 2}}));
	CHECK_THROWS_AS(simply_laced_cover(make_gcm({{2, -1, -2}, {-2, 2, -1}, {-1, -2, 2}})), Error);
}

TEST_CASE("simply_laced_cover invariants on every symmetrizable matrix of rank <= 3")
{
	int checked = 0;
	for (int rank = 1; rank <= 3; ++rank)
		for (auto &A : all_gcms(rank, -4))
		{
			if (!symmetrizer(A))
				continue;
			CoverSpec c = simply_laced_cover(A);
			CHECK_MESSAGE(check_cover(A, c).empty(), check_cover(A, c));
			CHECK(c.cover_gcm.is_simply_laced());
			++checked;
		}
	CHECK(checked > 100);
}

TEST_CASE("check_cover rejects a broken cover")
{
	GCM A = make_gcm({{2, -2}, {-2, 2}});
	CoverSpec c = simply_laced_cover(A);
	c.edges.erase(c.edges.begin());
	CHECK_FALSE(check_cover(A, c).empty());
}

TEST_CASE("simply_laced_cover invariants on every symmetrizable rank-4 matrix down to -4")
{
	// cycle products agree in both directions on every cycle of the complete graph K4
	const std::vector<std::vector<int>> cycles = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3},
	                                              {0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3}};
	const std::vector<std::pair<int, int>> pairs = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
	const long k = 4, per = 1 + k * k;
	long total = 1;
	for (size_t t = 0; t < pairs.size(); ++t)
		total *= per;
	std::vector<std::vector<long>> m(4, std::vector<long>(4, 0));
	for (int i = 0; i < 4; ++i)
		m[i][i] = 2;
	long checked = 0, violations = 0, disagreements = 0;
	for (long code = 0; code < total; ++code)
	{
		long c = code;
		for (auto [i, j] : pairs)
		{
			long v = c % per;
			c /= per;
			if (v == 0)
			{
				m[i][j] = m[j][i] = 0;
				continue;
			}
			--v;
			m[i][j] = -(1 + v / k);
			m[j][i] = -(1 + v % k);
		}
		bool consistent = std::all_of(cycles.begin(), cycles.end(), [&](const std::vector<int> &cy) {
			long f = 1, b = 1;
			for (size_t t = 0; t < cy.size(); ++t)
			{
				int i = cy[t], j = cy[(t + 1) % cy.size()];
				f *= m[i][j];
				b *= m[j][i];
			}
			return f == b;
		});
		if (!consistent)
			continue;
		GCM A = make_gcm(m);
		if (!symmetrizer(A))
		{
			++disagreements;
			continue;
		}
		++checked;
		if (!check_cover(A, simply_laced_cover(A)).empty())
			++violations;
	}
	CHECK(disagreements == 0);
	CHECK(checked == 213121);
	CHECK(violations == 0);
}
