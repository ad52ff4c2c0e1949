#include "kmforge/gcm.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace kmforge {

static std::string pos_str(int i, int j) { return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"; }

GCM validate_gcm(const std::vector<std::vector<Int>> &m, std::vector<std::string> labels)
{
	int n = (int)m.size();
	if (n == 0)
		throw Error("InvalidInput", "empty matrix");
	for (auto &row : m)
		if ((int)row.size() != n)
			throw Error("InvalidInput", "matrix is not square");
	for (int i = 0; i < n; ++i)
		if (m[i][i] != 2)
			throw Error("DiagonalNotTwo", "C1 fails at " + pos_str(i, i));
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
			if (i != j && m[i][j] > 0)
				throw Error("PositiveOffDiagonal", "C2 fails at " + pos_str(i, j));
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
			if (i != j && (m[i][j] == 0) != (m[j][i] == 0))
				throw Error("AsymmetricZero", "C3 fails at " + pos_str(i, j));
	if (labels.empty())
		for (int i = 0; i < n; ++i)
			labels.push_back(std::to_string(i + 1));
	if ((int)labels.size() != n)
		throw Error("InvalidInput", "label count does not match matrix size");
	std::set<std::string> seen(labels.begin(), labels.end());
	if ((int)seen.size() != n)
		throw Error("InvalidInput", "duplicate labels");

	GCM A;
	A.labels_ = std::move(labels);
	A.a_ = m;
	A.small_.assign(n, std::vector<long>(n, 0));
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
		{
			if (m[i][j].fits_slong_p() && abs(m[i][j]) < (1L << 30))
				A.small_[i][j] = m[i][j].get_si();
			else
				A.fits_ = false;
		}
	return A;
}

GCM make_gcm(const std::vector<std::vector<long>> &m)
{
	std::vector<std::vector<Int>> big;
	for (auto &row : m)
	{
		std::vector<Int> r;
		for (long x : row)
			r.emplace_back(x);
		big.push_back(std::move(r));
	}
	return validate_gcm(big);
}

long GCM::at(int i, int j) const
{
	if (!fits_)
		throw Error("Overflow", "GCM entries too large for the Lie engines");
	return small_[i][j];
}

bool GCM::is_symmetric() const
{
	for (int i = 0; i < rank(); ++i)
		for (int j = 0; j < i; ++j)
			if (a_[i][j] != a_[j][i])
				return false;
	return true;
}

bool GCM::is_simply_laced() const
{
	for (int i = 0; i < rank(); ++i)
		for (int j = 0; j < rank(); ++j)
			if (i != j && a_[i][j] != 0 && a_[i][j] != -1)
				return false;
	return true;
}

std::vector<std::vector<int>> GCM::components() const
{
	int n = rank();
	std::vector<int> comp(n, -1);
	std::vector<std::vector<int>> out;
	for (int s = 0; s < n; ++s)
	{
		if (comp[s] >= 0)
			continue;
		std::vector<int> stack{s}, members;
		comp[s] = (int)out.size();
		while (!stack.empty())
		{
			int v = stack.back();
			stack.pop_back();
			members.push_back(v);
			for (int w = 0; w < n; ++w)
				if (w != v && a_[v][w] != 0 && comp[w] < 0)
				{
					comp[w] = comp[s];
					stack.push_back(w);
				}
		}
		std::sort(members.begin(), members.end());
		out.push_back(members);
	}
	return out;
}

GCM GCM::principal(const std::vector<int> &idx) const
{
	std::vector<std::vector<Int>> m;
	std::vector<std::string> l;
	for (int i : idx)
	{
		std::vector<Int> row;
		for (int j : idx)
			row.push_back(a_[i][j]);
		m.push_back(row);
		l.push_back(labels_[i]);
	}
	return validate_gcm(m, l);
}

int GCM::index_of(const std::string &label) const
{
	for (int i = 0; i < rank(); ++i)
		if (labels_[i] == label)
			return i;
	throw Error("InvalidInput", "unknown index label " + label);
}

bool gcm_leq(const GCM &B, const GCM &A, const std::vector<int> &e)
{
	if ((int)e.size() != B.rank())
		throw Error("InvalidInput", "embedding size does not match rank of B");
	std::set<int> img(e.begin(), e.end());
	if ((int)img.size() != B.rank())
		throw Error("InvalidInput", "embedding is not injective");
	for (int x : e)
		if (x < 0 || x >= A.rank())
			throw Error("InvalidInput", "embedding leaves the index set of A");
	for (int i = 0; i < B.rank(); ++i)
		for (int j = 0; j < B.rank(); ++j)
			if (B.entry(i, j) < A.entry(e[i], e[j]))
				return false;
	return true;
}

bool gcm_leq(const GCM &B, const GCM &A)
{
	std::vector<int> id(B.rank());
	std::iota(id.begin(), id.end(), 0);
	return gcm_leq(B, A, id);
}

std::string to_string(KacType t)
{
	switch (t)
	{
	case KacType::Finite:
		return "Finite";
	case KacType::Affine:
		return "Affine";
	case KacType::Indefinite:
		return "Indefinite";
	}
	return "?";
}

Rat determinant(const std::vector<std::vector<Rat>> &m0)
{
	auto m = m0;
	int n = (int)m.size();
	Rat det = 1;
	for (int c = 0; c < n; ++c)
	{
		int r = c;
		while (r < n && m[r][c] == 0)
			++r;
		if (r == n)
			return 0;
		if (r != c)
		{
			std::swap(m[r], m[c]);
			det = -det;
		}
		det *= m[c][c];
		for (int i = c + 1; i < n; ++i)
			if (m[i][c] != 0)
			{
				Rat f = m[i][c] / m[c][c];
				for (int k = c; k < n; ++k)
					m[i][k] -= f * m[c][k];
			}
	}
	return det;
}

Rat principal_minor(const GCM &A, const std::vector<int> &idx)
{
	std::vector<std::vector<Rat>> m;
	for (int i : idx)
	{
		std::vector<Rat> row;
		for (int j : idx)
			row.emplace_back(A.entry(i, j));
		m.push_back(row);
	}
	return determinant(m);
}

KacType classify_type(const GCM &A)
{
	if (!A.indecomposable())
		throw Error("DecomposableMatrix", "the Dynkin diagram is not connected");
	int n = A.rank();
	bool proper_positive = true;
	for (unsigned mask = 1; mask + 1 < (1u << n); ++mask)
	{
		std::vector<int> idx;
		for (int i = 0; i < n; ++i)
			if (mask >> i & 1)
				idx.push_back(i);
		if (principal_minor(A, idx) <= 0)
		{
			proper_positive = false;
			break;
		}
	}
	std::vector<int> all(n);
	std::iota(all.begin(), all.end(), 0);
	Rat det = principal_minor(A, all);
	if (proper_positive && det > 0)
		return KacType::Finite;
	if (proper_positive && det == 0)
		return KacType::Affine;
	return KacType::Indefinite;
}

bool is_compact_hyperbolic(const GCM &A)
{
	if (classify_type(A) != KacType::Indefinite)
		return false;
	int n = A.rank();
	// every proper subdiagram, split into its connected pieces, must be finite
	for (unsigned mask = 1; mask + 1 < (1u << n); ++mask)
	{
		std::vector<int> idx;
		for (int i = 0; i < n; ++i)
			if (mask >> i & 1)
				idx.push_back(i);
		GCM sub = A.principal(idx);
		for (auto &c : sub.components())
			if (classify_type(sub.principal(c)) != KacType::Finite)
				return false;
	}
	return true;
}

std::optional<AffineSub> find_affine_sub(const GCM &A)
{
	int n = A.rank();
	for (int size = 1; size <= n; ++size)
	{
		std::vector<int> sel(n, 0);
		std::fill(sel.end() - size, sel.end(), 1);
		// subsets of a given size in lexicographic order of index lists
		std::vector<std::vector<int>> subsets;
		do
		{
			std::vector<int> J;
			for (int i = 0; i < n; ++i)
				if (sel[i])
					J.push_back(i);
			subsets.push_back(J);
		} while (std::next_permutation(sel.begin(), sel.end()));
		std::sort(subsets.begin(), subsets.end());

		for (auto &J : subsets)
		{
			int k = (int)J.size();
			long floor = -4L * k;
			std::vector<std::pair<int, int>> cells;
			std::vector<long> lo;
			for (int r = 0; r < k; ++r)
				for (int c = 0; c < k; ++c)
					if (r != c)
					{
						cells.push_back({r, c});
						lo.push_back(std::max(A.at(J[r], J[c]), floor));
					}
			std::vector<long> cur = lo;
			for (;;)
			{
				std::vector<std::vector<long>> m(k, std::vector<long>(k, 0));
				for (int r = 0; r < k; ++r)
					m[r][r] = 2;
				bool ok = true;
				for (size_t t = 0; t < cells.size(); ++t)
					m[cells[t].first][cells[t].second] = cur[t];
				for (int r = 0; r < k && ok; ++r)
					for (int c = 0; c < k; ++c)
						if ((m[r][c] == 0) != (m[c][r] == 0))
							ok = false;
				if (ok)
				{
					GCM B = make_gcm(m);
					if (B.indecomposable() && classify_type(B) == KacType::Affine)
					{
						std::vector<std::string> l;
						for (int j : J)
							l.push_back(A.labels()[j]);
						return AffineSub{J, validate_gcm(B.matrix(), l)};
					}
				}
				// odometer, last cell fastest
				int t = (int)cells.size() - 1;
				while (t >= 0 && cur[t] == 0)
				{
					cur[t] = lo[t];
					--t;
				}
				if (t < 0)
					break;
				++cur[t];
			}
		}
	}
	return std::nullopt;
}

std::optional<std::vector<long>> symmetrizer(const GCM &A)
{
	int n = A.rank();
	std::vector<Rat> d(n, 0);
	for (auto &comp : A.components())
	{
		d[comp[0]] = 1;
		std::vector<int> stack{comp[0]};
		while (!stack.empty())
		{
			int i = stack.back();
			stack.pop_back();
			for (int j : comp)
			{
				if (j == i || A.entry(i, j) == 0)
					continue;
				// d_i a_ij = d_j a_ji
				Rat dj = d[i] * Rat(A.entry(i, j)) / Rat(A.entry(j, i));
				if (d[j] == 0)
				{
					d[j] = dj;
					stack.push_back(j);
				}
				else if (d[j] != dj)
					return std::nullopt;
			}
		}
	}
	// scale each component to minimal positive integers
	std::vector<long> out(n);
	for (auto &comp : A.components())
	{
		Int l = 1;
		for (int i : comp)
			mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d[i].get_den_mpz_t());
		Int g = 0;
		for (int i : comp)
		{
			Rat s = d[i] * l;
			mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.get_num_mpz_t());
		}
		for (int i : comp)
		{
			Rat s = d[i] * l / g;
			out[i] = s.get_num().get_si();
		}
	}
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
			if (Int(out[i]) * A.entry(i, j) != Int(out[j]) * A.entry(j, i))
				return std::nullopt;
	return out;
}

long m_A(const GCM &A)
{
	long m = 0;
	for (int i = 0; i < A.rank(); ++i)
		for (int j = 0; j < A.rank(); ++j)
			if (i != j)
				m = std::max(m, -A.at(i, j));
	return m;
}

int CoverSpec::vertex(int i, int r) const
{
	for (size_t v = 0; v < block_of.size(); ++v)
		if (block_of[v] == i && slot_of[v] == r)
			return (int)v;
	return -1;
}

std::vector<int> CoverSpec::block(int i) const
{
	std::vector<int> out;
	for (size_t v = 0; v < block_of.size(); ++v)
		if (block_of[v] == i)
			out.push_back((int)v);
	return out;
}

static std::set<std::pair<int, int>> cover_edges(const GCM &A, const std::vector<long> &n,
                                                 const std::vector<int> &start, bool circulant)
{
	std::set<std::pair<int, int>> E;
	int r = A.rank();
	for (int i = 0; i < r; ++i)
		for (int j = i + 1; j < r; ++j)
		{
			long aji = -A.at(j, i), aij = -A.at(i, j);
			if (aji == 0)
				continue;
			if (circulant)
			{
				// from the smaller block
				int s = i, t = j;
				long deg = aji;
				if (n[i] > n[j])
				{
					s = j;
					t = i;
					deg = aij;
				}
				long q = n[t] / n[s];
				for (long x = 0; x < n[s]; ++x)
					for (long y = 0; y < deg; ++y)
					{
						int v = start[s] + (int)x, w = start[t] + (int)((x * q + y) % n[t]);
						E.insert({std::min(v, w), std::max(v, w)});
					}
			}
			else
			{
				for (long x = 0; x < n[i]; ++x)
					for (long y = 0; y < aji; ++y)
					{
						long stub = x * aji + y;
						int v = start[i] + (int)x, w = start[j] + (int)(stub % n[j]);
						E.insert({v, w});
					}
			}
		}
	return E;
}

static CoverSpec assemble_cover(const GCM &A, const std::vector<long> &n, std::set<std::pair<int, int>> E,
                                std::string how)
{
	CoverSpec c;
	c.block_sizes = n;
	std::vector<std::string> labels;
	for (int i = 0; i < A.rank(); ++i)
		for (long x = 0; x < n[i]; ++x)
		{
			c.block_of.push_back(i);
			c.slot_of.push_back((int)x);
			labels.push_back(A.labels()[i] + "." + std::to_string(x + 1));
		}
	int V = (int)c.block_of.size();
	std::vector<std::vector<Int>> m(V, std::vector<Int>(V, 0));
	for (int v = 0; v < V; ++v)
		m[v][v] = 2;
	for (auto [v, w] : E)
		m[v][w] = m[w][v] = -1;
	c.edges = std::move(E);
	c.cover_gcm = validate_gcm(m, labels);
	c.construction = std::move(how);
	return c;
}

std::string check_cover(const GCM &A, const CoverSpec &c)
{
	int V = (int)c.block_of.size();
	std::vector<std::vector<long>> cnt(V, std::vector<long>(A.rank(), 0));
	for (auto [v, w] : c.edges)
	{
		if (c.block_of[v] == c.block_of[w])
			return "edge inside block " + A.labels()[c.block_of[v]];
		cnt[v][c.block_of[w]]++;
		cnt[w][c.block_of[v]]++;
	}
	for (int v = 0; v < V; ++v)
		for (int j = 0; j < A.rank(); ++j)
		{
			int i = c.block_of[v];
			if (j == i)
				continue;
			if (cnt[v][j] != -A.at(j, i))
				return "vertex " + c.cover_gcm.labels()[v] + " has " + std::to_string(cnt[v][j]) +
				       " neighbours in block " + A.labels()[j] + ", expected " + std::to_string(-A.at(j, i));
		}
	if (!c.cover_gcm.is_simply_laced())
		return "cover matrix is not simply laced";
	return "";
}

CoverSpec simply_laced_cover(const GCM &A)
{
	auto d = symmetrizer(A);
	if (!d)
		throw Error("NotSymmetrizable", "no symmetrizer exists");
	int r = A.rank();
	long L = 1;
	for (long x : *d)
		L = lcm_l(L, x);
	std::vector<long> base(r), n(r);
	for (int i = 0; i < r; ++i)
		base[i] = L / (*d)[i];
	for (long t = 1;; ++t)
	{
		bool ok = true;
		for (int i = 0; i < r; ++i)
			for (int j = 0; j < r; ++j)
				if (i != j && -A.at(j, i) > base[j] * t)
					ok = false;
		if (ok)
		{
			for (int i = 0; i < r; ++i)
				n[i] = base[i] * t;
			break;
		}
	}
	std::vector<int> start(r, 0);
	for (int i = 1; i < r; ++i)
		start[i] = start[i - 1] + (int)n[i - 1];

	CoverSpec c = assemble_cover(A, n, cover_edges(A, n, start, true), "circulant");
	if (check_cover(A, c).empty())
		return c;
	return assemble_cover(A, n, cover_edges(A, n, start, false), "stub");
}

} // namespace kmforge
