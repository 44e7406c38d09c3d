#ifndef TSCO_REFERENCE_HPP
#define TSCO_REFERENCE_HPP

#include <string>
#include <vector>

// Dispatch rows reported for the two benchmark cases, with their printed costs.
// Decision values are rounded as printed.

namespace tsco::reference {

struct DispatchRow {
    std::string method;
    std::vector<double> x; // decision-vector layout of the matching case
    double cost = 0.0;
};

inline constexpr double case1_optimum_cost = 9257.07;
inline constexpr double case2_best_cost = 10094.2351;
inline constexpr double case2_best_loss = 0.6834;
inline constexpr double case2_best_total_power = 600.6834;
inline constexpr double case2_best_total_heat = 150.0;

inline const std::vector<double>& case1_optimum()
{
    static const std::vector<double> x {0, 160, 40, 40, 75, 0};
    return x;
}

// Layout (P1, P2, P3, H2, H3, H4).
inline const std::vector<DispatchRow>& case1_rows()
{
    static const std::vector<DispatchRow> rows {
        {"ACSA", {0.08, 150.93, 49, 48.84, 65.79, 0.37}, 9452.2},
        {"GA", {0, 159.23, 40.77, 39.94, 75.06, 0}, 9267.5},
        {"RGA", {0, 158.18, 41.82, 37, 78, 0}, 9263.28},
        {"EP", {0, 160, 40, 40, 75, 0}, 9257.1},
        {"FA", {0.0014, 159.9986, 40, 40, 75, 0}, 9257.1},
        {"IWO", {0.0002, 159.9998, 40, 40, 75, 0}, 9257.08},
        {"CPSO", {0, 160, 40, 40, 75, 0}, 9257.08},
        {"RCGA-IMM", {0, 160, 40, 40, 75, 0}, 9257.075},
        {"HS", {0, 160, 40, 40, 75, 0}, 9257.07},
        {"IGA-MU", {0, 160, 40, 39.99, 75, 0}, 9257.07},
        {"SARGA", {0, 159.99, 40.01, 39.99, 75, 0}, 9257.07},
        {"EMA", {0, 160, 40, 40, 75, 0}, 9257.07},
        {"TVAC_PSO", {0, 160, 40, 40, 75, 0}, 9257.07},
        {"Direct method", {0, 160, 40, 40, 75, 0}, 9257.07},
        {"GWO", {0, 160, 40, 40, 75, 0}, 9257.07},
        {"MCSA", {0, 160, 40, 40, 75, 0}, 9257.07},
        {"CSA", {0, 160, 40, 40, 75, 0}, 9257.07},
        {"CSO", {0, 160, 40, 40, 75, 0}, 9257.07},
        {"TSCO", {0, 160, 40, 40, 75, 0}, 9257.07},
    };
    return rows;
}

// Layout (P1..P6, H5, H6, H7).
inline const std::vector<DispatchRow>& case2_rows()
{
    static const std::vector<DispatchRow> rows {
        {"RCGA", {74.6834, 97.9578, 167.2308, 124.9079, 98.8008, 44.0001, 58.0965, 32.4116, 59.4919}, 10667},
        {"PSO", {18.4626, 124.2602, 112.7794, 209.8158, 98.8140, 44.0107, 57.9236, 32.7603, 59.3161}, 10613},
        {"EP", {61.3610, 95.1205, 99.9427, 208.7319, 98.8, 44, 18.0713, 77.5548, 54.3739}, 10390},
        {"AIS", {50.1325, 95.5552, 110.7515, 208.7688, 98.8, 44, 19.4242, 77.0777, 53.4981}, 10355},
        {"CPSO", {75, 112.38, 30, 250, 93.2701, 40.1585, 32.5655, 72.6738, 44.7606}, 10325.399},
        {"DE", {44.2118, 98.5383, 112.6913, 209.7741, 98.8217, 44, 12.5379, 78.3481, 59.1139}, 10317},
        {"BCO", {43.9457, 98.5888, 112.932, 209.7719, 98.8, 44, 12.0974, 78.0236, 59.879}, 10317},
        {"ECSA", {53.7610, 98.5039, 112.5996, 209.7993, 93.0872, 40.2022, 33.6571, 72.6890, 43.6539}, 10121.9466},
        {"KHA", {46.3835, 104.1223, 64.3729, 246.1853, 98.9736, 40.7401, 0, 66.71, 83.29}, 10111.1501},
        {"EMA", {52.6847, 98.5398, 112.6734, 208.8158, 93.8341, 40, 29.242, 75, 45.7579}, 10111.0732},
        {"TLBO", {45.266, 98.5479, 112.6786, 209.8284, 94.4121, 40.0062, 25.8365, 74.9970, 49.1666}, 10094.8384},
        {"CSO", {45.4909, 98.5398, 112.6734, 209.8158, 94.1838, 40, 27.1786, 75, 47.8214}, 10094.1267},
        {"SCO", {58.7268, 98.5398, 112.6735, 209.8158, 81, 40, 92.0061, 45.0590, 12.9349}, 10226.8556},
        {"TSCO", {45.5231, 98.5385, 112.5798, 209.8159, 94.2261, 40, 28.6947, 74.9981, 46.3072}, 10094.2351},
    };
    return rows;
}

inline const DispatchRow& case2_best()
{
    return case2_rows().back();
}

} // namespace tsco::reference

#endif // TSCO_REFERENCE_HPP
