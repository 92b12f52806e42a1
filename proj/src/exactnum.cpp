#include "dpmpd/exactnum.hpp"

#include <stdexcept>

namespace dpmpd {

namespace mp = boost::multiprecision;

Rational::Rational(BigInt n, BigInt d) : num(std::move(n)), den(std::move(d)) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    normalize();
}

void Rational::normalize() {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    BigInt g = mp::gcd(num < 0 ? BigInt(-num) : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (num == 0) den = 1;
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num * o.den + o.num * den, den * o.den);
}

Rational Rational::operator-(const Rational& o) const {
    return Rational(num * o.den - o.num * den, den * o.den);
}

Rational Rational::operator*(const Rational& o) const {
    return Rational(num * o.num, den * o.den);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num == 0) throw std::invalid_argument("Rational: division by zero");
    return Rational(num * o.den, den * o.num);
}

double Rational::to_double() const {
    return static_cast<double>(mp::cpp_rational(num, den));
}

std::string Rational::str() const {
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("Rational: empty string");
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text), 1);
        const std::string num_part = text.substr(0, slash);
        const std::string den_part = text.substr(slash + 1);
        if (num_part.empty() || den_part.empty())
            throw std::invalid_argument("Rational: malformed fraction");
        return Rational(BigInt(num_part), BigInt(den_part));
    } catch (const std::runtime_error& e) {
        // cpp_int raises runtime_error for malformed digit strings.
        throw std::invalid_argument(std::string("Rational: cannot parse '") + text + "'");
    }
}

IntMatrix::IntMatrix(int r, int c, std::vector<long long> entries) : IntMatrix(r, c) {
    if (entries.size() != data.size())
        throw std::invalid_argument("IntMatrix: entry count does not match shape");
    for (std::size_t i = 0; i < entries.size(); ++i) data[i] = entries[i];
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    if (rows != o.rows || cols != o.cols) throw std::invalid_argument("IntMatrix: shape mismatch in +");
    IntMatrix r(rows, cols);
    for (std::size_t i = 0; i < data.size(); ++i) r.data[i] = data[i] + o.data[i];
    return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
    if (rows != o.rows || cols != o.cols) throw std::invalid_argument("IntMatrix: shape mismatch in -");
    IntMatrix r(rows, cols);
    for (std::size_t i = 0; i < data.size(); ++i) r.data[i] = data[i] - o.data[i];
    return r;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols != o.rows) throw std::invalid_argument("IntMatrix: shape mismatch in *");
    IntMatrix r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const BigInt& aik = at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < o.cols; ++j) r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

IntMatrix operator*(const BigInt& s, const IntMatrix& m) {
    IntMatrix r(m.rows, m.cols);
    for (std::size_t i = 0; i < m.data.size(); ++i) r.data[i] = s * m.data[i];
    return r;
}

IntMatrix int_kronecker(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix r(a.rows * b.rows, a.cols * b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) {
            const BigInt& aij = a.at(i, j);
            if (aij == 0) continue;
            for (int k = 0; k < b.rows; ++k)
                for (int l = 0; l < b.cols; ++l)
                    r.at(i * b.rows + k, j * b.cols + l) = aij * b.at(k, l);
        }
    return r;
}

BigInt int_det(const IntMatrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("int_det: matrix not square");
    const int n = m.rows;
    if (n == 0) return 1;
    IntMatrix w = m;
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (w.at(k, k) == 0) {
            int pivot = -1;
            for (int i = k + 1; i < n; ++i)
                if (w.at(i, k) != 0) {
                    pivot = i;
                    break;
                }
            if (pivot < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(pivot, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                w.at(i, j) = (w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j)) / prev;
            w.at(i, k) = 0;
        }
        prev = w.at(k, k);
    }
    BigInt d = w.at(n - 1, n - 1);
    return sign < 0 ? BigInt(-d) : d;
}

BigInt floor_kth_root(const BigInt& m, unsigned k) {
    if (m < 0) throw std::invalid_argument("floor_kth_root: negative argument");
    if (k == 0) throw std::invalid_argument("floor_kth_root: zeroth root");
    if (m == 0 || m == 1 || k == 1) return m;
    // Binary search on r in [1, 2^(ceil(bits/k))].
    const unsigned bits = static_cast<unsigned>(mp::msb(m)) + 1;
    BigInt lo = 1;
    BigInt hi = BigInt(1) << (bits / k + 1);
    while (lo < hi) {
        BigInt mid = (lo + hi + 1) / 2;
        if (mp::pow(mid, k) <= m)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

bool is_perfect_kth_power(const BigInt& m, unsigned k) {
    if (m < 1) throw std::invalid_argument("is_perfect_kth_power: argument must be positive");
    if (k == 0) throw std::invalid_argument("is_perfect_kth_power: zeroth power");
    if (k == 1 || m == 1) return true;
    BigInt r = floor_kth_root(m, k);
    return mp::pow(r, k) == m;
}

bool root_product_is_irrational(const std::vector<BigInt>& bases,
                                const std::vector<Rational>& exponents) {
    if (bases.size() != exponents.size())
        throw std::invalid_argument("root_product_is_irrational: length mismatch");
    if (bases.empty())
        throw std::invalid_argument("root_product_is_irrational: empty product");
    BigInt lcm_den = 1;
    for (std::size_t i = 0; i < bases.size(); ++i) {
        if (bases[i] < 1) throw std::invalid_argument("root_product_is_irrational: bases must be positive");
        if (exponents[i].num <= 0)
            throw std::invalid_argument("root_product_is_irrational: exponents must be positive");
        lcm_den = mp::lcm(lcm_den, exponents[i].den);
    }
    // The product is m^(1/L) with L = lcm of exponent denominators and
    // m = prod base_i^(L * exp_i), an integer.  It is rational iff m is a
    // perfect L-th power.
    if (lcm_den == 1) return false;  // integer exponents: product is an integer
    const auto L = lcm_den.convert_to<unsigned long long>();
    BigInt combined = 1;
    for (std::size_t i = 0; i < bases.size(); ++i) {
        BigInt e = exponents[i].num * (lcm_den / exponents[i].den);
        combined *= mp::pow(bases[i], e.convert_to<unsigned>());
    }
    return !is_perfect_kth_power(combined, static_cast<unsigned>(L));
}

}  // namespace dpmpd
