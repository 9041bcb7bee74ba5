#include "latcoh/document.hpp"

#include "latcoh/errors.hpp"

#include <sstream>
#include <vector>

namespace latcoh {

namespace {

std::vector<std::string> logical_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::istringstream probe(line);
        std::string word;
        if (probe >> word) lines.push_back(line);
    }
    return lines;
}

long parse_long(const std::string& tok, const char* what) {
    try {
        size_t used = 0;
        long v = std::stol(tok, &used);
        if (used != tok.size()) throw ParseError(std::string("bad integer in ") + what);
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError(std::string("bad integer in ") + what);
    }
}

IntMatrix parse_matrix(const std::vector<std::string>& lines, size_t& idx, long r,
                       const char* what) {
    IntMatrix m(r, r);
    for (long i = 0; i < r; ++i) {
        if (idx >= lines.size()) throw ParseError(std::string(what) + ": missing matrix row");
        std::istringstream row(lines[idx++]);
        std::string tok;
        for (long j = 0; j < r; ++j) {
            if (!(row >> tok)) throw ParseError(std::string(what) + ": short matrix row");
            try {
                m(i, j) = mpz_class(tok);
            } catch (const std::invalid_argument&) {
                throw ParseError(std::string(what) + ": bad matrix entry");
            }
        }
        if (row >> tok) throw ParseError(std::string(what) + ": long matrix row");
    }
    return m;
}

} // namespace

GroupLattice parse_document(const std::string& text) {
    const auto lines = logical_lines(text);
    size_t idx = 0;
    auto next = [&](const char* what) -> std::string {
        if (idx >= lines.size()) throw ParseError(std::string("unexpected end of document in ") + what);
        return lines[idx++];
    };

    {
        std::istringstream h(next("header"));
        std::string a, b, c;
        h >> a >> b >> c;
        if (a != "latcoh" || b != "lattice" || c != "v1")
            throw ParseError("document header must be 'latcoh lattice v1'");
    }

    GroupLattice m;
    {
        std::istringstream l(next("base"));
        std::string kw, kind;
        l >> kw >> kind;
        if (kw != "base") throw ParseError("expected 'base' line");
        if (kind == "Z") {
            m.base = BaseRing::integers();
        } else if (kind == "Z_loc") {
            std::string p;
            if (!(l >> p)) throw ParseError("base Z_loc needs a prime");
            try {
                m.base = BaseRing::localized(parse_long(p, "base"));
            } catch (const InvariantViolation& e) {
                throw ParseError(e.what());
            }
        } else if (kind == "cyclotomic") {
            std::string mm;
            if (!(l >> mm)) throw ParseError("base cyclotomic needs an index");
            try {
                m.base = BaseRing::cyclotomic(parse_long(mm, "base"));
            } catch (const InvariantViolation& e) {
                throw ParseError(e.what());
            }
        } else {
            throw ParseError("unknown base ring kind '" + kind + "'");
        }
    }
    {
        std::istringstream l(next("group"));
        std::string kw, kind, n;
        l >> kw >> kind >> n;
        if (kw != "group" || kind != "cyclic") throw ParseError("expected 'group cyclic <n>'");
        const long order = parse_long(n, "group");
        if (order < 1) throw ParseError("group order must be positive");
        m.group = CyclicGroup{order};
    }
    {
        std::istringstream l(next("rank"));
        std::string kw, r;
        l >> kw >> r;
        if (kw != "rank") throw ParseError("expected 'rank <r>'");
        m.z_rank = parse_long(r, "rank");
        if (m.z_rank < 0) throw ParseError("rank must be nonnegative");
    }
    auto keyword = [&](const char* what) {
        std::istringstream l(next(what));
        std::string kw, extra;
        l >> kw;
        if (l >> extra) throw ParseError(std::string(what) + ": unexpected token '" + extra + "'");
        return kw;
    };
    if (keyword("sigma") != "sigma") throw ParseError("expected 'sigma' section");
    m.sigma = parse_matrix(lines, idx, m.z_rank, "sigma");

    std::string kw = keyword("zeta or end");
    if (kw == "zeta") {
        m.zeta = parse_matrix(lines, idx, m.z_rank, "zeta");
        kw = keyword("end");
    }
    if (kw != "end") throw ParseError("expected 'end'");
    if (idx != lines.size()) throw ParseError("trailing content after 'end'");

    m.validate(); // throws InvariantViolation on a well-formed but invalid document
    return m;
}

std::string emit_document(const GroupLattice& m) {
    std::ostringstream os;
    os << "latcoh lattice v1\n";
    switch (m.base.kind) {
        case BaseRing::Kind::Integers: os << "base Z\n"; break;
        case BaseRing::Kind::LocalizedAtP: os << "base Z_loc " << m.base.p << "\n"; break;
        case BaseRing::Kind::Cyclotomic: os << "base cyclotomic " << m.base.m << "\n"; break;
    }
    os << "group cyclic " << m.group.order << "\n";
    os << "rank " << m.z_rank << "\n";
    os << "sigma\n" << m.sigma.to_string();
    if (m.zeta) os << "zeta\n" << m.zeta->to_string();
    os << "end\n";
    return os.str();
}

GroupLattice builtin_lattice(const std::string& spec) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : spec) {
        if (ch == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);

    const std::string& kind = parts[0];
    auto arg = [&](size_t i, const char* what) -> long {
        if (parts.size() <= i) throw ParseError(std::string("builtin ") + kind + " needs " + what);
        return parse_long(parts[i], "builtin");
    };

    if (kind == "regular") {
        if (parts.size() != 2) throw ParseError("usage: regular:N");
        return regular_lattice(BaseRing::integers(), CyclicGroup{arg(1, "N")});
    }
    if (kind == "trivial") {
        if (parts.size() != 2) throw ParseError("usage: trivial:N");
        return trivial_lattice(BaseRing::integers(), CyclicGroup{arg(1, "N")});
    }
    if (kind == "augmentation") {
        if (parts.size() != 2) throw ParseError("usage: augmentation:N");
        const long n = arg(1, "N");
        if (n < 1) throw ParseError("augmentation:N needs N >= 1");
        return augmentation_ideal(BaseRing::integers(), CyclicGroup{n});
    }
    if (kind == "zeta-twist") {
        if (parts.size() != 2) throw ParseError("usage: zeta-twist:P");
        const long p = arg(1, "P");
        GroupLattice m;
        if (p == 2) { // Gaussian variant: sigma u = zeta u over Z[i], sigma of order 4
            m.base = BaseRing::cyclotomic(4);
            m.group = CyclicGroup{4};
            m.z_rank = 2;
            m.sigma = m.base.zeta_matrix();
            m.zeta = m.base.zeta_matrix();
        } else {
            if (!is_prime(p)) throw ParseError("zeta-twist:P needs a prime");
            m.base = BaseRing::cyclotomic(p);
            m.group = CyclicGroup{p};
            m.z_rank = p - 1;
            m.sigma = m.base.zeta_matrix();
            m.zeta = m.base.zeta_matrix();
        }
        m.validate();
        return m;
    }
    if (kind == "permutation") {
        if (parts.size() != 3) throw ParseError("usage: permutation:N:d1,d2,...");
        const long n = arg(1, "N");
        std::vector<long> orbits;
        std::string tok;
        std::istringstream list(parts[2]);
        while (std::getline(list, tok, ','))
            if (!tok.empty()) orbits.push_back(parse_long(tok, "builtin"));
        if (orbits.empty()) throw ParseError("permutation builtin needs at least one orbit");
        try {
            return permutation_lattice(BaseRing::integers(), CyclicGroup{n}, orbits);
        } catch (const BadDivisor& e) {
            throw ParseError(e.what());
        }
    }
    throw ParseError("unknown builtin '" + kind + "'");
}

} // namespace latcoh
