#pragma once

// Published lower-bound columns (n, q, decomposition) for r = 1..4, n <= 12.
// r = 1, n = 12 uses 20481, the value of the closed form n 2^{n-1} - 2^n + 1.

#include <string>
#include <vector>

namespace expected {

struct Row {
    int n, q;
    std::string decomposition;
};

inline std::vector<Row> column(int r)
{
    switch (r) {
    case 1:
        return {{2, 1, "1"},     {3, 1, "5"},     {4, 1, "17"},    {5, 1, "49"},    {6, 1, "129"},   {7, 1, "321"},
                {8, 1, "769"},   {9, 1, "1793"},  {10, 1, "4097"}, {11, 1, "9217"}, {12, 1, "20481"}};
    case 2:
        return {{3, 3, "1"},           {4, 3, "8 + 1"},         {5, 3, "40 + 9"},         {6, 3, "160 + 49"},
                {7, 3, "560 + 209"},   {8, 3, "1792 + 769"},    {9, 3, "5376 + 2561"},    {10, 3, "15360 + 7937"},
                {11, 3, "42240 + 23297"}, {12, 3, "112640 + 65537"}};
    case 3:
        return {{4, 7, "1"},       {5, 7, "10"},     {5, 4, "1"},      {6, 7, "60"},      {6, 4, "11"},
                {7, 7, "280"},     {7, 4, "71"},     {8, 7, "1120"},   {8, 4, "351"},     {9, 7, "4032"},
                {9, 4, "1471"},    {10, 7, "13440"}, {10, 4, "5503"},  {11, 7, "42240"},  {11, 4, "18943"},
                {12, 7, "126720"}, {12, 4, "61183"}};
    case 4:
        return {{5, 15, "1"},           {6, 15, "12 + 2"},      {6, 7, "239"},           {7, 15, "84 + 26"},
                {7, 7, "3107"},         {8, 15, "448 + 194"},   {8, 7, "23183"},         {9, 15, "2016 + 1090"},
                {9, 7, "130255"},       {10, 15, "8064 + 5122"}, {10, 7, "612079"},      {11, 15, "29568 + 21250"},
                {11, 7, "2539375"},     {12, 15, "101376 + 80386"}, {12, 7, "9606127"}};
    default:
        return {};
    }
}

} // namespace expected
