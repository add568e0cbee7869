#include "fgbeam/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace fgbeam {

namespace {

const std::array<double, 1> x1 = {0.0};
const std::array<double, 1> w1 = {2.0};

const std::array<double, 2> x2 = {-0.5773502691896257645091488, 0.5773502691896257645091488};
const std::array<double, 2> w2 = {1.0, 1.0};

const std::array<double, 3> x3 = {-0.7745966692414833770358531, 0.0, 0.7745966692414833770358531};
const std::array<double, 3> w3 = {0.5555555555555555555555556, 0.8888888888888888888888889,
                                  0.5555555555555555555555556};

const std::array<double, 4> x4 = {-0.8611363115940525752239465, -0.3399810435848562648026658,
                                  0.3399810435848562648026658, 0.8611363115940525752239465};
const std::array<double, 4> w4 = {0.3478548451374538573730639, 0.6521451548625461426269361,
                                  0.6521451548625461426269361, 0.3478548451374538573730639};

const std::array<double, 5> x5 = {-0.9061798459386639927976269, -0.5384693101056830910363144, 0.0,
                                  0.5384693101056830910363144, 0.9061798459386639927976269};
const std::array<double, 5> w5 = {0.2369268850561890875142640, 0.4786286704993664680412915,
                                  0.5688888888888888888888889, 0.4786286704993664680412915,
                                  0.2369268850561890875142640};

const std::array<double, 6> x6 = {-0.9324695142031520278123016, -0.6612093864662645136613996,
                                  -0.2386191860831969086305017, 0.2386191860831969086305017,
                                  0.6612093864662645136613996,  0.9324695142031520278123016};
const std::array<double, 6> w6 = {0.1713244923791703450402961, 0.3607615730481386075698335,
                                  0.4679139345726910473898703, 0.4679139345726910473898703,
                                  0.3607615730481386075698335, 0.1713244923791703450402961};

const std::array<double, 7> x7 = {-0.9491079123427585245261897, -0.7415311855993944398638648,
                                  -0.4058451513773971669066064, 0.0,
                                  0.4058451513773971669066064,  0.7415311855993944398638648,
                                  0.9491079123427585245261897};
const std::array<double, 7> w7 = {0.1294849661688696932706114, 0.2797053914892766679014678,
                                  0.3818300505051189449503698, 0.4179591836734693877551020,
                                  0.3818300505051189449503698, 0.2797053914892766679014678,
                                  0.1294849661688696932706114};

const std::array<double, 8> x8 = {-0.9602898564975362316835609, -0.7966664774136267395915539,
                                  -0.5255324099163289858177390, -0.1834346424956498049394761,
                                  0.1834346424956498049394761,  0.5255324099163289858177390,
                                  0.7966664774136267395915539,  0.9602898564975362316835609};
const std::array<double, 8> w8 = {0.1012285362903762591525314, 0.2223810344533744705443560,
                                  0.3137066458778872873379622, 0.3626837833783619829651504,
                                  0.3626837833783619829651504, 0.3137066458778872873379622,
                                  0.2223810344533744705443560, 0.1012285362903762591525314};

const std::array<double, 9> x9 = {-0.9681602395076260898355762, -0.8360311073266357942994298,
                                  -0.6133714327005903973087020, -0.3242534234038089290385380,
                                  0.0,
                                  0.3242534234038089290385380,  0.6133714327005903973087020,
                                  0.8360311073266357942994298,  0.9681602395076260898355762};
const std::array<double, 9> w9 = {0.0812743883615744119718922, 0.1806481606948574040584720,
                                  0.2606106964029354623187429, 0.3123470770400028400686304,
                                  0.3302393550012597631645251, 0.3123470770400028400686304,
                                  0.2606106964029354623187429, 0.1806481606948574040584720,
                                  0.0812743883615744119718922};

const std::array<double, 10> x10 = {-0.9739065285171717200779640, -0.8650633666889845107320967,
                                    -0.6794095682990244062343274, -0.4333953941292471907992659,
                                    -0.1488743389816312108848260, 0.1488743389816312108848260,
                                    0.4333953941292471907992659,  0.6794095682990244062343274,
                                    0.8650633666889845107320967,  0.9739065285171717200779640};
const std::array<double, 10> w10 = {0.0666713443086881375935688, 0.1494513491505805931457763,
                                    0.2190863625159820439955349, 0.2692667193099963550912269,
                                    0.2955242247147528701738930, 0.2955242247147528701738930,
                                    0.2692667193099963550912269, 0.2190863625159820439955349,
                                    0.1494513491505805931457763, 0.0666713443086881375935688};

double gauss_panel(const ScalarFn& fn, double a, double b, const GaussRule& rule) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * fn(mid + half * rule.nodes[i]);
    return half * sum;
}

} // namespace

GaussRule gauss_rule(int order) {
    switch (order) {
        case 1: return {x1, w1};
        case 2: return {x2, w2};
        case 3: return {x3, w3};
        case 4: return {x4, w4};
        case 5: return {x5, w5};
        case 6: return {x6, w6};
        case 7: return {x7, w7};
        case 8: return {x8, w8};
        case 9: return {x9, w9};
        case 10: return {x10, w10};
        default: throw std::invalid_argument("gauss_rule: order must be in 1..10");
    }
}

std::vector<double> make_panel_edges(double y_lo, double y_hi, std::span<const double> breaks,
                                     int n_sub) {
    if (y_lo > y_hi) throw std::domain_error("make_panel_edges: inverted interval");
    if (n_sub < 1) throw std::invalid_argument("make_panel_edges: n_sub must be >= 1");

    std::vector<double> pieces = {y_lo};
    for (double br : breaks)
        if (br > y_lo + 1e-12 && br < y_hi - 1e-12) pieces.push_back(br);
    pieces.push_back(y_hi);
    std::sort(pieces.begin(), pieces.end());

    std::vector<double> edges;
    edges.reserve((pieces.size() - 1) * static_cast<std::size_t>(n_sub) + 1);
    edges.push_back(pieces.front());
    for (std::size_t k = 0; k + 1 < pieces.size(); ++k) {
        const double a = pieces[k];
        const double step = (pieces[k + 1] - a) / n_sub;
        for (int j = 1; j <= n_sub; ++j) edges.push_back(j == n_sub ? pieces[k + 1] : a + j * step);
    }
    return edges;
}

double integrate_thickness(const ScalarFn& integrand, double y_lo, double y_hi,
                           std::span<const double> breaks, const QuadratureOptions& opts) {
    if (y_lo > y_hi) throw std::domain_error("integrate_thickness: inverted interval");
    if (y_lo == y_hi) return 0.0;
    const auto edges = make_panel_edges(y_lo, y_hi, breaks, opts.n_sub);
    const GaussRule rule = gauss_rule(opts.gauss_order);
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < edges.size(); ++k)
        sum += gauss_panel(integrand, edges[k], edges[k + 1], rule);
    return sum;
}

PrefixTable::PrefixTable(const ScalarFn& integrand, std::vector<double> panel_edges,
                         int gauss_order)
    : fn_(integrand), edges_(std::move(panel_edges)), order_(gauss_order) {
    if (edges_.size() < 2) throw std::invalid_argument("PrefixTable: need at least one panel");
    const GaussRule rule = gauss_rule(order_);
    prefix_.resize(edges_.size());
    prefix_[0] = 0.0;
    for (std::size_t k = 0; k + 1 < edges_.size(); ++k)
        prefix_[k + 1] = prefix_[k] + gauss_panel(fn_, edges_[k], edges_[k + 1], rule);
}

double PrefixTable::operator()(double y) const {
    const double lo = edges_.front();
    const double hi = edges_.back();
    const double tol = 1e-9 * (hi - lo);
    if (y < lo - tol || y > hi + tol)
        throw std::domain_error("PrefixTable: query outside tabulated interval");
    y = std::clamp(y, lo, hi);

    auto it = std::upper_bound(edges_.begin(), edges_.end(), y);
    std::size_t k = static_cast<std::size_t>(std::distance(edges_.begin(), it));
    if (k > 0) --k;
    if (k + 1 >= edges_.size()) k = edges_.size() - 2;

    double value = prefix_[k];
    if (y > edges_[k]) value += gauss_panel(fn_, edges_[k], y, gauss_rule(order_));
    return value;
}

} // namespace fgbeam
