#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace befp {

struct Vec2
{
    double x = 0.0;
    double y = 0.0;
};

inline double norm2(Vec2 v) { return v.x * v.x + v.y * v.y; }

/// Uniform n x n cell grid on the square [-L, L]^2.
class Grid2D
{
public:
    Grid2D(double half_width, std::size_t cells);

    double half_width() const { return half_width_; }
    std::size_t cells() const { return cells_; }
    double spacing() const { return spacing_; }
    /// Center of cell i along either axis.
    double center(std::size_t i) const { return -half_width_ + (static_cast<double>(i) + 0.5) * spacing_; }
    /// Position of edge i (i = 0..n) along either axis.
    double edge(std::size_t i) const { return -half_width_ + static_cast<double>(i) * spacing_; }
    double cell_area() const { return spacing_ * spacing_; }

    bool operator==(const Grid2D&) const = default;

private:
    double half_width_;
    std::size_t cells_;
    double spacing_;
};

/// Cell averages on a Grid2D, stored row-major with the x index first:
/// value(i, j) = values[i * n + j], cell center (center(i), center(j)).
class Field2D
{
public:
    explicit Field2D(Grid2D grid);
    Field2D(Grid2D grid, std::vector<double> values);

    static Field2D sample(Grid2D grid, const std::function<double(double, double)>& density);

    const Grid2D& grid() const { return grid_; }
    std::size_t cells() const { return grid_.cells(); }
    double operator()(std::size_t i, std::size_t j) const { return values_[i * grid_.cells() + j]; }
    double& operator()(std::size_t i, std::size_t j) { return values_[i * grid_.cells() + j]; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    double mass() const;
    double min_value() const;
    double max_value() const;

private:
    Grid2D grid_;
    std::vector<double> values_;
};

double l1_distance(const Field2D& a, const Field2D& b);

/// CSV rows `i,j,x,y,value` under a header line.
void write_field_csv(std::ostream& os, const Field2D& f);
void write_field_csv(const std::string& path, const Field2D& f);

/// Binary dump: 32-byte little-endian header (uint64 magic, int64 n,
/// float64 L, float64 time) followed by n*n float64 values, row-major.
inline constexpr std::uint64_t field_magic = 0x3144324650464542ull;  // "BEFPF2D1"
void write_field_binary(std::ostream& os, const Field2D& f, double time);
void write_field_binary(const std::string& path, const Field2D& f, double time);

struct FieldSnapshot
{
    Field2D field;
    double time;
};
FieldSnapshot read_field_binary(std::istream& is);
FieldSnapshot read_field_binary(const std::string& path);

}  // namespace befp
