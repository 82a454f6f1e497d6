#pragma once

/**
 * @file spectrum_set.hpp
 * @brief Closed subsets of ℂ or ℂ² given as finite unions of cells.
 *
 * A cell is either a finite point set or a torus image
 *
 *     φ ↦ c₀ + Σ_j c_j · exp(2πi⟨x_j, φ⟩),   φ ∈ 𝕋^p,
 *
 * with integer exponent vectors x_j. For joint spectra every coefficient is
 * a pair, and a Point carries two coordinates; for ordinary spectra the
 * second coordinate is always 0.
 *
 * normalize() brings a set into canonical form: torus terms with equal
 * exponents are merged, vanishing terms dropped, exponents rewritten in a
 * basis of the lattice they span, zero-dimensional tori turned into points,
 * duplicate and contained cells removed, points deduplicated and absorbed by
 * tori, and everything sorted.
 */

#include "measalg/lattice.hpp"
#include "measalg/scalar.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace measalg {

using Point = std::array<Complex, 2>;

inline Point make_point(Complex a, Complex b = {0.0, 0.0}) { return Point{a, b}; }
/// Euclidean distance in ℂ² (ℂ when both second coordinates vanish).
double point_distance(const Point& a, const Point& b);
double point_norm(const Point& a);

struct TorusTerm {
    Point coeff{};
    IntVector exponent;
};

/// Center and radii of {c + Σ c_j w_j : |w_j| = 1} when the terms are independent.
struct Annulus {
    Complex center{0.0, 0.0};
    double inner = 0.0;
    double outer = 0.0;
};

struct TorusCell {
    Point constant{};
    std::vector<TorusTerm> terms;
    std::size_t params = 0;
    std::string label;

    /// Rank of the exponent vectors.
    std::size_t dimension() const;
    Point evaluate(std::span<const double> phi) const;
    /// Integer relations Σ m_j x_j = 0 among the term exponents (HNF basis).
    std::vector<IntVector> relations() const;
    /// Closed form when there are no relations and the cell lives in ℂ.
    std::optional<Annulus> annulus(int arity) const;
};

struct PointCell {
    std::vector<Point> points;
};

using Cell = std::variant<PointCell, TorusCell>;

class SpectrumSet {
public:
    explicit SpectrumSet(int arity = 1) : arity_(arity) {}

    int arity() const { return arity_; }
    const std::vector<Cell>& cells() const { return cells_; }
    bool empty() const { return cells_.empty(); }

    void add_point(const Point& p);
    void add_torus(TorusCell cell);
    void merge(const SpectrumSet& other);

    SpectrumSet normalized(double tol = 1e-9) const;

    /// Every point stored in point cells.
    std::vector<Point> finite_points() const;
    std::vector<const TorusCell*> tori() const;

    /// Samples per cell: point cells contribute their points, tori
    /// `per_cell` quasi-random parameter values.
    std::vector<std::vector<Point>> sample(std::size_t per_cell, std::uint64_t seed) const;

    /// Distance from z to the set (exact for points and annuli, local
    /// least-squares refinement for other tori).
    double distance(const Point& z) const;
    bool contains(const Point& z, double tol) const { return distance(z) <= tol; }

    /// Image under (z1, z2) ↦ z1·z2 for a set in ℂ²; exact on tori.
    SpectrumSet product_map() const;
    /// Image under z ↦ conj(z) coordinatewise.
    SpectrumSet conjugated() const;

private:
    int arity_;
    std::vector<Cell> cells_;
};

/// Distance from z to s, except that the search stops early and returns some
/// value ≤ cutoff once the distance is known to be at most cutoff.
double bounded_distance(const SpectrumSet& s, const Point& z, double cutoff);

/// Distance from z to a single torus cell.
double torus_distance(const TorusCell& cell, const Point& z, int arity);

/// Same cell structure after normalization (points within tol, tori
/// pairwise equivalent).
bool structurally_equal(const SpectrumSet& a, const SpectrumSet& b, double tol = 1e-9);

/// Symmetric Hausdorff distance estimated from `samples` points per cell,
/// each sample measured against the other set. Tori with an equivalent
/// torus (coefficients within 1e−9) on the other side are not sampled.
/// Values below 1e−12 are reported as some value ≤ 1e−12.
double sampled_hausdorff(const SpectrumSet& a, const SpectrumSet& b, std::size_t samples, std::uint64_t seed);

/// Symmetric Hausdorff distance between a point cloud and a set (same 1e−12 floor).
double cloud_hausdorff(const std::vector<Point>& cloud, const SpectrumSet& s, std::size_t samples, std::uint64_t seed);

/// max |z| over the set (first coordinate).
double spectral_radius(const SpectrumSet& s, std::uint64_t seed = 0);

/// Finite points at distance ≥ separation from every other cell.
std::vector<Point> isolated_points(const SpectrumSet& s, double separation);

}  // namespace measalg
