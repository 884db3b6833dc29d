#include "epscert/quadform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace epscert {

namespace {

using i128 = __int128;

long long to_ll(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("form arithmetic overflows 64 bits");
    return static_cast<long long>(v);
}

// b shifted into (-a, a] by multiples of 2a, with c kept consistent.
void normalize(long long& a, long long& b, long long& c, long long D) {
    i128 two_a = 2 * static_cast<i128>(a);
    i128 r = static_cast<i128>(b) % two_a;
    if (r < 0) r += two_a;
    if (r > a) r -= two_a;
    b = to_ll(r);
    c = to_ll((static_cast<i128>(b) * b - D) / (4 * static_cast<i128>(a)));
}

void check_definite(const QuadForm& f) {
    if (f.a <= 0) throw std::domain_error("form must have a > 0");
    if (f.disc() >= 0) throw std::domain_error("form must have negative discriminant");
}

i128 xgcd(i128 a, i128 b, i128& x, i128& y) {
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return a >= 0 ? a : -a;
    }
    i128 x1, y1;
    i128 g = xgcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

}  // namespace

QuadForm reduce(QuadForm f) {
    check_definite(f);
    const long long D = f.disc();
    normalize(f.a, f.b, f.c, D);
    while (f.a > f.c) {
        long long a = f.c, b = -f.b, c = f.a;
        f = {a, b, c};
        normalize(f.a, f.b, f.c, D);
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    return f;
}

bool is_reduced(const QuadForm& f) {
    if (f.a <= 0 || f.disc() >= 0) return false;
    bool base = std::abs(f.b) <= f.a && f.a <= f.c;
    if (!base) return false;
    if ((std::abs(f.b) == f.a || f.a == f.c) && f.b < 0) return false;
    return true;
}

QuadForm principal_form(long long D) {
    long long r = ((D % 4) + 4) % 4;
    if (D >= 0 || (r != 0 && r != 1)) throw std::domain_error("not a negative discriminant");
    long long b = (r == 1) ? 1 : 0;
    return {1, b, (b * b - D) / 4};
}

QuadForm compose(const QuadForm& f, const QuadForm& g) {
    check_definite(f);
    check_definite(g);
    const long long D = f.disc();
    if (g.disc() != D) throw std::invalid_argument("composition needs equal discriminants");

    i128 a1 = f.a, b1 = f.b, a2 = g.a, b2 = g.b;
    i128 u, v;
    i128 d1 = xgcd(a1, a2, u, v);
    i128 b3 = u * a1 * (b2 - b1);
    i128 a3 = a1 * a2;
    if (d1 != 1) {
        i128 s = (b1 + b2) / 2;
        i128 u2, w2;
        i128 d = xgcd(d1, s, u2, w2);
        i128 num = b3 * u2 + w2 * (static_cast<i128>(D) - b1 * b1) / 2;
        if (num % d != 0) throw std::logic_error("composition: non-integral translation");
        b3 = num / d;
        a3 /= d * d;
    }
    i128 two_a3 = 2 * a3;
    b3 = (b3 + b1) % two_a3;
    if (b3 < 0) b3 += two_a3;
    i128 c3 = (b3 * b3 - D) / (4 * a3);
    return reduce({to_ll(a3), to_ll(b3), to_ll(c3)});
}

QuadForm form_pow(QuadForm f, unsigned long long e) {
    QuadForm acc = principal_form(f.disc());
    f = reduce(f);
    while (e) {
        if (e & 1) acc = compose(acc, f);
        f = compose(f, f);
        e >>= 1;
    }
    return acc;
}

std::vector<std::pair<long long, unsigned>> factorize(long long n) {
    if (n < 0) n = -n;
    std::vector<std::pair<long long, unsigned>> out;
    if (n < 2) return out;
    for (long long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::optional<std::string> fundamental_defect(long long D) {
    if (D >= 0) return "expected D < 0, got " + std::to_string(D);
    long long r = ((D % 4) + 4) % 4;
    if (r == 2 || r == 3)
        return std::to_string(D) + " = " + std::to_string(r) + " (mod 4) is not a discriminant";
    if (r == 1) {
        for (const auto& [p, e] : factorize(D))
            if (e >= 2)
                return std::to_string(D) + " is divisible by " + std::to_string(p * p);
        return std::nullopt;
    }
    long long m = D / 4;
    long long mr = ((m % 4) + 4) % 4;
    if (mr == 0 || mr == 1)
        return std::to_string(D) + "/4 = " + std::to_string(mr) + " (mod 4), so " +
               std::to_string(D) + " is a square multiple of a smaller discriminant";
    for (const auto& [p, e] : factorize(m))
        if (e >= 2) return std::to_string(D) + "/4 is divisible by " + std::to_string(p * p);
    return std::nullopt;
}

unsigned ramified_count(long long D) {
    if (auto defect = fundamental_defect(D))
        throw std::invalid_argument("non-fundamental discriminant: " + *defect);
    return static_cast<unsigned>(factorize(D).size());
}

namespace {

// All reduced forms of discriminant D with the count of ambiguous ones.
std::vector<QuadForm> enumerate_reduced(long long D, unsigned long* ambiguous) {
    std::vector<QuadForm> forms;
    unsigned long amb = 0;
    const long long absd = -D;
    const long long parity = ((D % 2) + 2) % 2;  // b = D (mod 2)
    for (long long a = 1; 3 * a * a <= absd; ++a) {
        long long b0 = -a;
        if ((((b0 % 2) + 2) % 2) != parity) ++b0;
        for (long long b = b0; b <= a; b += 2) {
            // solve 4ac = b^2 + |D|
            long long num = b * b + absd;
            if (num % (4 * a)) continue;
            long long c = num / (4 * a);
            if (c < a) continue;
            if ((std::abs(b) == a || a == c) && b < 0) continue;
            forms.push_back({a, b, c});
            if (b == 0 || b == a || a == c) ++amb;
        }
    }
    std::sort(forms.begin(), forms.end());
    if (ambiguous) *ambiguous = amb;
    return forms;
}

unsigned log2_exact(unsigned long n, const char* what) {
    unsigned k = 0;
    unsigned long v = n;
    while (v > 1 && v % 2 == 0) {
        v /= 2;
        ++k;
    }
    if (v != 1) throw std::logic_error(std::string(what) + " is not a power of 2");
    return k;
}

}  // namespace

FormClassGroup class_group(long long D, long long cap) {
    if (auto defect = fundamental_defect(D))
        throw std::invalid_argument("non-fundamental discriminant: " + *defect);
    if (-D > cap)
        throw std::length_error("|D| = " + std::to_string(-D) + " exceeds cap " + std::to_string(cap));

    FormClassGroup group;
    group.D = D;
    unsigned long ambiguous = 0;
    group.forms = enumerate_reduced(D, &ambiguous);
    group.h = group.forms.size();

    // group structure by counting q^j-torsion through iterated power maps
    const QuadForm id = principal_form(D);
    std::map<long long, std::vector<unsigned>> partitions;  // q -> conjugate partition
    for (const auto& [q, e] : factorize(static_cast<long long>(group.h))) {
        (void)e;
        std::vector<QuadForm> cur = group.forms;
        std::vector<unsigned long> torsion{1};
        while (true) {
            for (QuadForm& x : cur) x = form_pow(x, static_cast<unsigned long long>(q));
            unsigned long count = 0;
            for (const QuadForm& x : cur)
                if (x == id) ++count;
            if (count == torsion.back()) break;
            torsion.push_back(count);
        }
        std::vector<unsigned> conj;  // conj[j-1] = #divisors with v_q >= j
        for (std::size_t j = 1; j < torsion.size(); ++j) {
            unsigned long ratio = torsion[j] / torsion[j - 1];
            unsigned r = 0;
            unsigned long v = 1;
            while (v < ratio) {
                v *= static_cast<unsigned long>(q);
                ++r;
            }
            if (v != ratio) throw std::logic_error("torsion counts are not q-power ratios");
            conj.push_back(r);
        }
        partitions[q] = conj;
    }
    std::size_t k = 0;
    for (const auto& [q, conj] : partitions) k = std::max(k, conj.empty() ? 0ul : static_cast<unsigned long>(conj[0]));
    std::vector<unsigned long> divisors(k, 1);  // index 0 = largest divisor
    for (const auto& [q, conj] : partitions) {
        for (std::size_t i = 0; i < k; ++i) {
            unsigned exp = 0;
            for (unsigned r : conj)
                if (r >= i + 1) ++exp;
            for (unsigned n = 0; n < exp; ++n) divisors[i] *= static_cast<unsigned long>(q);
        }
    }
    std::reverse(divisors.begin(), divisors.end());  // ascending, d_1 | d_2 | ...
    group.elementary_divisors = divisors;

    unsigned long product = 1;
    for (unsigned long d : divisors) product *= d;
    if (product != group.h) throw std::logic_error("elementary divisors do not multiply to h");
    unsigned even = 0;
    for (unsigned long d : divisors)
        if (d % 2 == 0) ++even;
    group.two_rank = even;
    if (log2_exact(ambiguous, "ambiguous form count") != group.two_rank)
        throw std::logic_error("ambiguous classes disagree with the 2-rank");
    return group;
}

GenusCheck genus_check(long long D, long long cap) {
    GenusCheck check;
    check.predicted = ramified_count(D) - 1;
    check.observed = class_group(D, cap).two_rank;
    check.pass = check.predicted == check.observed;
    return check;
}

Rational chevalley_ambiguous(unsigned long long h_k, std::uint64_t p, unsigned t,
                             unsigned long long unit_norm_index) {
    if (h_k == 0 || unit_norm_index == 0) throw std::invalid_argument("h_k and index must be >= 1");
    if (t == 0) throw std::invalid_argument("t must be >= 1");
    i128 num = h_k;
    for (unsigned i = 1; i < t; ++i) {
        if (num > INT64_MAX / static_cast<i128>(p))
            throw std::overflow_error("Chevalley count overflows 64 bits");
        num *= p;
    }
    if (num > INT64_MAX) throw std::overflow_error("Chevalley count overflows 64 bits");
    i128 den = unit_norm_index;
    i128 g = std::gcd(static_cast<long long>(num), static_cast<long long>(den));
    return Rational{to_ll(num / g), to_ll(den / g)};
}

namespace {

struct ScanAccumulator {
    double sup = -std::numeric_limits<double>::infinity();
    long long arg = 0;
    std::vector<long long> violations;
    unsigned long count = 0;
};

// Count of ambiguous reduced forms for every |D| in [lo, hi), by sweeping the
// three shapes (a,0,c), (a,a,c), (a,b,a) over the block.
std::vector<std::uint16_t> ambiguous_counts(long long lo, long long hi) {
    std::vector<std::uint16_t> cnt(hi - lo, 0);
    // (a, 0, c), |D| = 4ac, a <= c
    for (long long a = 1; 4 * a * a < hi; ++a) {
        long long c0 = std::max(a, (lo + 4 * a - 1) / (4 * a));
        for (long long c = c0; 4 * a * c < hi; ++c) ++cnt[4 * a * c - lo];
    }
    // (a, a, c), |D| = 4ac - a^2, a <= c
    for (long long a = 1; 3 * a * a < hi; ++a) {
        long long c0 = std::max(a, (lo + a * a + 4 * a - 1) / (4 * a));
        for (long long c = c0; 4 * a * c - a * a < hi; ++c) ++cnt[4 * a * c - a * a - lo];
    }
    // (a, b, a), |D| = 4a^2 - b^2, 0 < b < a
    for (long long a = 1; 3 * a * a < hi; ++a) {
        for (long long b = 1; b < a; ++b) {
            long long v = 4 * a * a - b * b;
            if (v >= lo && v < hi) ++cnt[v - lo];
        }
    }
    return cnt;
}

// squarefree flags for [lo, hi)
std::vector<bool> squarefree_flags(long long lo, long long hi) {
    std::vector<bool> sf(hi - lo, true);
    for (long long q = 2; q * q < hi; ++q) {
        long long q2 = q * q;
        for (long long v = ((lo + q2 - 1) / q2) * q2; v < hi; v += q2) sf[v - lo] = false;
    }
    return sf;
}

void scan_block(long long lo, long long hi, double epsilon, double log_c, ScanAccumulator& acc) {
    const auto cnt = ambiguous_counts(lo, hi);
    const auto sf = squarefree_flags(lo, hi);
    const auto sf4 = squarefree_flags(lo / 4, hi / 4 + 1);
    const double log2 = std::log(2.0);
    for (long long ad = lo; ad < hi; ++ad) {
        bool fundamental;
        if (ad % 4 == 3)
            fundamental = sf[ad - lo];
        else if (ad % 4 == 0) {
            long long m = ad / 4;
            fundamental = (m % 4 == 1 || m % 4 == 2) && sf4[m - lo / 4];
        } else {
            fundamental = false;
        }
        if (!fundamental) continue;
        ++acc.count;
        unsigned two_rank = log2_exact(cnt[ad - lo], "sieved ambiguous count");
        double value = two_rank * log2 - epsilon / 2.0 * std::log(static_cast<double>(ad));
        if (value > acc.sup) {
            acc.sup = value;
            acc.arg = -ad;
        }
        if (value > log_c) acc.violations.push_back(-ad);
    }
}

}  // namespace

EpsilonScanResult epsilon_scan(long long d_min, long long d_max, double epsilon, double log_c,
                               unsigned threads) {
    if (d_min > d_max || d_max > -3)
        throw std::invalid_argument("scan range must satisfy d_min <= d_max <= -3");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
    const long long lo = -d_max, hi = -d_min + 1;
    if (threads == 0) threads = 1;

    std::vector<ScanAccumulator> accs(threads);
    if (threads == 1) {
        scan_block(lo, hi, epsilon, log_c, accs[0]);
    } else {
        std::vector<std::thread> pool;
        long long chunk = (hi - lo + threads - 1) / threads;
        for (unsigned i = 0; i < threads; ++i) {
            long long blo = lo + chunk * i;
            long long bhi = std::min(hi, blo + chunk);
            if (blo >= bhi) break;
            pool.emplace_back([=, &accs] { scan_block(blo, bhi, epsilon, log_c, accs[i]); });
        }
        for (auto& t : pool) t.join();
    }

    EpsilonScanResult out;
    out.empirical_sup = -std::numeric_limits<double>::infinity();
    for (const ScanAccumulator& acc : accs) {
        out.fundamental_count += acc.count;
        if (acc.sup > out.empirical_sup) {
            out.empirical_sup = acc.sup;
            out.arg_sup = acc.arg;
        }
        out.violations.insert(out.violations.end(), acc.violations.begin(), acc.violations.end());
    }
    return out;
}

std::vector<GenusScanRow> genus_scan(long long d_min, long long d_max, unsigned threads) {
    if (d_min > d_max || d_max > -3)
        throw std::invalid_argument("scan range must satisfy d_min <= d_max <= -3");
    if (threads == 0) threads = 1;
    const long long lo = -d_max, hi = -d_min + 1;

    auto run_range = [](long long blo, long long bhi, std::vector<GenusScanRow>& rows) {
        for (long long ad = blo; ad < bhi; ++ad) {
            long long D = -ad;
            if (fundamental_defect(D)) continue;
            unsigned long ambiguous = 0;
            auto forms = enumerate_reduced(D, &ambiguous);
            GenusScanRow row;
            row.D = D;
            row.h = forms.size();
            row.two_rank = log2_exact(ambiguous, "ambiguous form count");
            row.t = static_cast<unsigned>(factorize(D).size());
            row.pass = row.two_rank == row.t - 1;
            rows.push_back(row);
        }
    };

    std::vector<std::vector<GenusScanRow>> parts(threads);
    if (threads == 1) {
        run_range(lo, hi, parts[0]);
    } else {
        std::vector<std::thread> pool;
        long long chunk = (hi - lo + threads - 1) / threads;
        for (unsigned i = 0; i < threads; ++i) {
            long long blo = lo + chunk * i;
            long long bhi = std::min(hi, blo + chunk);
            if (blo >= bhi) break;
            pool.emplace_back([=, &parts] { run_range(blo, bhi, parts[i]); });
        }
        for (auto& t : pool) t.join();
    }
    std::vector<GenusScanRow> rows;
    for (auto& part : parts) rows.insert(rows.end(), part.begin(), part.end());
    return rows;
}

}  // namespace epscert
