#include "kmforge/roots.hpp"

#include "kmforge/liealg.hpp"

#include <algorithm>
#include <set>

namespace kmforge {

int height(const RootVec &a)
{
	int h = 0;
	for (int x : a)
		h += x;
	return h;
}

bool is_positive(const RootVec &a)
{
	bool nz = false;
	for (int x : a)
	{
		if (x < 0)
			return false;
		if (x)
			nz = true;
	}
	return nz;
}

RootVec simple_root(int rank, int i)
{
	RootVec a(rank, 0);
	a[i] = 1;
	return a;
}

RootVec add(const RootVec &a, const RootVec &b)
{
	RootVec c = a;
	for (size_t k = 0; k < c.size(); ++k)
		c[k] += b[k];
	return c;
}

RootVec sub(const RootVec &a, const RootVec &b)
{
	RootVec c = a;
	for (size_t k = 0; k < c.size(); ++k)
		c[k] -= b[k];
	return c;
}

RootVec scale(const RootVec &a, int k)
{
	RootVec c = a;
	for (auto &x : c)
		x *= k;
	return c;
}

bool leq(const RootVec &a, const RootVec &b)
{
	for (size_t k = 0; k < a.size(); ++k)
		if (a[k] > b[k])
			return false;
	return true;
}

std::string root_str(const RootVec &a)
{
	std::string s = "(";
	for (size_t k = 0; k < a.size(); ++k)
		s += (k ? "," : "") + std::to_string(a[k]);
	return s + ")";
}

bool degree_less(const RootVec &a, const RootVec &b)
{
	int ha = height(a), hb = height(b);
	if (ha != hb)
		return ha < hb;
	return a > b;
}

long pairing(const GCM &A, const RootVec &alpha, const CorootVec &h)
{
	long s = 0;
	for (int i = 0; i < A.rank(); ++i)
		for (int j = 0; j < A.rank(); ++j)
			s += (long)h[i] * alpha[j] * A.at(i, j);
	return s;
}

RootVec reflect_root(const GCM &A, int i, const RootVec &alpha)
{
	long c = 0;
	for (int j = 0; j < A.rank(); ++j)
		c += (long)alpha[j] * A.at(i, j);
	RootVec r = alpha;
	r[i] -= (int)c;
	return r;
}

CorootVec reflect_coroot(const GCM &A, int i, const CorootVec &h)
{
	long c = 0;
	for (int j = 0; j < A.rank(); ++j)
		c += (long)h[j] * A.at(j, i);
	CorootVec r = h;
	r[i] -= (int)c;
	return r;
}

Int pairing_big(const GCM &A, const BigRootVec &alpha, const BigRootVec &h)
{
	Int s = 0;
	for (int i = 0; i < A.rank(); ++i)
		for (int j = 0; j < A.rank(); ++j)
			s += h[i] * alpha[j] * A.entry(i, j);
	return s;
}

BigRootVec reflect_root_big(const GCM &A, int i, const BigRootVec &alpha)
{
	Int c = 0;
	for (int j = 0; j < A.rank(); ++j)
		c += alpha[j] * A.entry(i, j);
	BigRootVec r = alpha;
	r[i] -= c;
	return r;
}

BigRootVec reflect_coroot_big(const GCM &A, int i, const BigRootVec &h)
{
	Int c = 0;
	for (int j = 0; j < A.rank(); ++j)
		c += h[j] * A.entry(j, i);
	BigRootVec r = h;
	r[i] -= c;
	return r;
}

std::string to_string(RootKind k)
{
	switch (k)
	{
	case RootKind::Real:
		return "Real";
	case RootKind::Imaginary:
		return "Imaginary";
	case RootKind::NotRoot:
		return "NotRoot";
	}
	return "?";
}

static bool support_connected(const GCM &A, const RootVec &a)
{
	std::vector<int> supp;
	for (int i = 0; i < A.rank(); ++i)
		if (a[i])
			supp.push_back(i);
	if (supp.empty())
		return false;
	std::set<int> seen{supp[0]};
	std::vector<int> stack{supp[0]};
	while (!stack.empty())
	{
		int v = stack.back();
		stack.pop_back();
		for (int w : supp)
			if (!seen.count(w) && A.at(v, w) != 0)
			{
				seen.insert(w);
				stack.push_back(w);
			}
	}
	return seen.size() == supp.size();
}

Descent descend(const GCM &A, const RootVec &alpha)
{
	Descent d;
	RootVec b = alpha;
	if (!is_positive(b))
	{
		d.end = b;
		return d;
	}
	for (;;)
	{
		if (height(b) == 1)
		{
			d.kind = RootKind::Real;
			d.terminal = (int)(std::find(b.begin(), b.end(), 1) - b.begin());
			break;
		}
		int pick = -1;
		for (int i = 0; i < A.rank(); ++i)
		{
			long c = 0;
			for (int j = 0; j < A.rank(); ++j)
				c += (long)b[j] * A.at(i, j);
			if (c > 0)
			{
				pick = i;
				break;
			}
		}
		if (pick < 0)
		{
			d.kind = support_connected(A, b) ? RootKind::Imaginary : RootKind::NotRoot;
			break;
		}
		b = reflect_root(A, pick, b);
		d.word.push_back(pick);
		if (!is_positive(b))
		{
			d.kind = RootKind::NotRoot;
			break;
		}
	}
	d.end = b;
	return d;
}

const RootEntry &RootTable::at(const RootVec &a) const
{
	auto it = entries.find(a);
	if (it == entries.end())
		throw Error("UnknownRoot", root_str(a) + " is not in the root table");
	return it->second;
}

bool RootTable::is_real(const RootVec &a) const
{
	auto it = entries.find(a);
	return it != entries.end() && it->second.kind == RootKind::Real;
}

std::vector<RootVec> RootTable::real_roots() const
{
	std::vector<RootVec> out;
	for (auto &[a, e] : entries)
		if (e.kind == RootKind::Real)
			out.push_back(a);
	return out;
}

RootTable enumerate_roots(BandContext &ctx, int max_height)
{
	if (max_height < 1)
		throw Error("InvalidInput", "max_height must be at least 1");
	RootTable t;
	t.gcm = ctx.gcm();
	t.max_height = max_height;
	std::vector<RootVec> layer;
	for (int i = 0; i < ctx.rank(); ++i)
		layer.push_back(simple_root(ctx.rank(), i));
	for (int h = 1; h <= max_height && !layer.empty(); ++h)
	{
		std::set<RootVec> next;
		for (auto &a : layer)
		{
			RootEntry e;
			e.mult = ctx.dim(a);
			Descent d = descend(ctx.gcm(), a);
			if (d.kind == RootKind::NotRoot)
				throw Error("Internal", "degree " + root_str(a) + " has a root space but fails descent");
			e.kind = d.kind;
			if (d.kind == RootKind::Real)
			{
				e.descent_word = d.word;
				e.terminal = d.terminal;
			}
			t.entries.emplace(a, e);
			if (h < max_height)
				for (int k = 0; k < ctx.rank(); ++k)
				{
					RootVec b = a;
					b[k]++;
					if (!next.count(b) && ctx.dim(b) > 0)
						next.insert(b);
				}
		}
		layer.assign(next.begin(), next.end());
	}
	return t;
}

RootTable enumerate_roots(const GCM &A, int max_height)
{
	BandContext ctx(A, max_height, Scalars::rationals());
	return enumerate_roots(ctx, max_height);
}

CorootVec coroot_of_real(const GCM &A, const RootVec &alpha, const RootTable &table)
{
	const RootEntry &e = table.at(alpha);
	if (e.kind != RootKind::Real)
		throw Error("NotRealRoot", root_str(alpha) + " is imaginary");
	CorootVec h = simple_root(A.rank(), e.terminal);
	for (int k = (int)e.descent_word.size() - 1; k >= 0; --k)
		h = reflect_coroot(A, e.descent_word[k], h);
	return h;
}

Rat sym_form(const GCM &A, const std::vector<long> &d, const RootVec &a, const RootVec &b)
{
	Rat s = 0;
	for (int i = 0; i < A.rank(); ++i)
		for (int j = 0; j < A.rank(); ++j)
			s += Rat((long)a[i] * b[j] * d[i]) * Rat(A.entry(i, j));
	return s;
}

std::optional<Rat> sym_form(const GCM &A, const RootVec &a, const RootVec &b)
{
	auto d = symmetrizer(A);
	if (!d)
		return std::nullopt;
	return sym_form(A, *d, a, b);
}

static BoundedVerdict closure_check(const RootTable &t, const std::vector<RootVec> &psi, bool ideal)
{
	std::set<RootVec> in(psi.begin(), psi.end());
	for (auto &a : psi)
		t.at(a);
	BoundedVerdict v{true, t.max_height};
	std::vector<RootVec> left;
	if (ideal)
		for (auto &[a, e] : t.entries)
			left.push_back(a);
	else
		left = psi;
	for (auto &a : left)
		for (auto &b : psi)
		{
			RootVec c = add(a, b);
			if (height(c) > t.max_height || !t.contains(c))
				continue;
			if (!in.count(c))
				v.value = false;
		}
	return v;
}

BoundedVerdict is_closed_set(const RootTable &t, const std::vector<RootVec> &psi)
{
	return closure_check(t, psi, false);
}

BoundedVerdict is_root_ideal(const RootTable &t, const std::vector<RootVec> &psi)
{
	return closure_check(t, psi, true);
}

Interval prenilpotent_interval(const RootTable &t, const RootVec &alpha, const RootVec &beta)
{
	if (!t.is_real(alpha))
		throw Error("NotRealRoot", root_str(alpha));
	if (!t.is_real(beta))
		throw Error("NotRealRoot", root_str(beta));
	if (alpha == beta)
		throw Error("InvalidInput", "the two roots must be distinct");
	Interval out;
	int ha = height(alpha), hb = height(beta);
	std::vector<std::pair<RootVec, std::pair<int, int>>> found;
	for (int i = 0; i * ha <= t.max_height; ++i)
		for (int j = 0; i * ha + j * hb <= t.max_height; ++j)
		{
			if (i == 0 && j == 0)
				continue;
			RootVec c = add(scale(alpha, i), scale(beta, j));
			if (!t.contains(c))
				continue;
			if (t.at(c).kind == RootKind::Imaginary)
			{
				out.reason = "Unbounded";
				return out;
			}
			found.push_back({c, {i, j}});
		}
	for (auto &[c, ij] : found)
		if (height(c) + std::max(ha, hb) > t.max_height)
		{
			out.reason = "BoundReached";
			return out;
		}
	std::sort(found.begin(), found.end(), [](auto &x, auto &y) { return degree_less(x.first, y.first); });
	for (auto &[c, ij] : found)
	{
		out.roots.push_back(c);
		out.coeffs.push_back(ij);
	}
	return out;
}

} // namespace kmforge
