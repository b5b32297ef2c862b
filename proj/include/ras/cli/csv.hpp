#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ras
{
    // RFC 4180: quote fields holding a comma, quote or line break; CRLF rows.
    inline std::string csv_field(const std::string& f)
    {
        if (f.find_first_of(",\"\r\n") == std::string::npos)
        {
            return f;
        }
        std::string out = "\"";
        for (char c : f)
        {
            if (c == '"')
            {
                out += '"';
            }
            out += c;
        }
        return out + "\"";
    }

    inline void write_csv_row(std::ostream& out, const std::vector<std::string>& fields)
    {
        for (std::size_t i = 0; i < fields.size(); ++i)
        {
            out << (i ? "," : "") << csv_field(fields[i]);
        }
        out << "\r\n";
    }
}
