#pragma once

#include <string_view>

#include "dsmatch/dataset.hpp"
#include "dsmatch/io.hpp"

namespace dsmatch {

// The ten-movie, four-user toy catalog used throughout the documentation and
// the self-test. Same document as data/skydemo/skydemo.json.
inline constexpr std::string_view kSkydemoJson = R"json(
{
  "schema_version": 1,
  "dimensions": [
    {
      "name": "Director",
      "side": "item",
      "arity": "single"
    },
    {
      "name": "Year",
      "side": "item",
      "arity": "single"
    },
    {
      "name": "Stars",
      "side": "item",
      "arity": "multi"
    },
    {
      "name": "Genre",
      "side": "item",
      "arity": "multi"
    },
    {
      "name": "Age",
      "side": "user",
      "arity": "single"
    },
    {
      "name": "Gender",
      "side": "user",
      "arity": "single"
    },
    {
      "name": "Location",
      "side": "user",
      "arity": "single"
    },
    {
      "name": "Interests",
      "side": "user",
      "arity": "multi"
    }
  ],
  "items": [
    {
      "id": "0",
      "values": {
        "Director": "Boyle",
        "Year": "1996",
        "Stars": [
          "Ewan McGregor",
          "Ewen Bremner"
        ],
        "Genre": [
          "Drama"
        ]
      }
    },
    {
      "id": "1",
      "values": {
        "Director": "Levinson",
        "Year": "1996",
        "Stars": [
          "Robert De Niro",
          "Kevin Bacon",
          "Brad Pitt"
        ],
        "Genre": [
          "Crime",
          "Drama",
          "Thriller"
        ]
      }
    },
    {
      "id": "2",
      "values": {
        "Director": "Scorsese",
        "Year": "2015",
        "Stars": [
          "Robert De Niro",
          "Leonardo DiCaprio",
          "Brad Pitt"
        ],
        "Genre": [
          "Short",
          "Comedy"
        ]
      }
    },
    {
      "id": "3",
      "values": {
        "Director": "Scorsese",
        "Year": "1990",
        "Stars": [
          "Robert De Niro",
          "Ray Liotta",
          "Joe Pesci"
        ],
        "Genre": [
          "Biography",
          "Crime",
          "Drama"
        ]
      }
    },
    {
      "id": "4",
      "values": {
        "Director": "Boyle",
        "Year": "2000",
        "Stars": [
          "Leonardo DiCaprio"
        ],
        "Genre": [
          "Adventure",
          "Drama",
          "Romance"
        ]
      }
    },
    {
      "id": "5",
      "values": {
        "Director": "Howard",
        "Year": "1995",
        "Stars": [
          "Tom Hanks",
          "Kevin Bacon"
        ],
        "Genre": [
          "Adventure",
          "Drama",
          "History"
        ]
      }
    },
    {
      "id": "6",
      "values": {
        "Director": "Zemeckis",
        "Year": "1994",
        "Stars": [
          "Tom Hanks"
        ],
        "Genre": [
          "Comedy",
          "Drama"
        ]
      }
    },
    {
      "id": "7",
      "values": {
        "Director": "Zemeckis",
        "Year": "1985",
        "Stars": [
          "Michael J. Fox",
          "Christopher Lloyd"
        ],
        "Genre": [
          "Adventure",
          "Sci-Fi"
        ]
      }
    },
    {
      "id": "8",
      "values": {
        "Director": "Edwards",
        "Year": "2016",
        "Stars": [
          "Felicity Jones",
          "Diego Luna"
        ],
        "Genre": [
          "Adventure",
          "Sci-Fi"
        ]
      }
    },
    {
      "id": "9",
      "values": {
        "Director": "Scott",
        "Year": "2015",
        "Stars": [
          "Matt Damon"
        ],
        "Genre": [
          "Adventure",
          "Drama",
          "Sci-Fi"
        ]
      }
    }
  ],
  "users": [
    {
      "id": "1",
      "values": {
        "Age": "30s",
        "Gender": "M",
        "Location": "IT",
        "Interests": [
          "Movies",
          "Books"
        ]
      }
    },
    {
      "id": "2",
      "values": {
        "Age": "30s",
        "Gender": "F",
        "Location": "IT",
        "Interests": [
          "Sport"
        ]
      }
    },
    {
      "id": "3",
      "values": {
        "Age": "20s",
        "Gender": "M",
        "Location": "SP",
        "Interests": [
          "Books"
        ]
      }
    },
    {
      "id": "4",
      "values": {
        "Age": "40s",
        "Gender": "M",
        "Location": "IT",
        "Interests": [
          "Music",
          "Sport"
        ]
      }
    }
  ],
  "likes": [
    {
      "item": "0",
      "user": "1"
    },
    {
      "item": "0",
      "user": "2"
    },
    {
      "item": "0",
      "user": "3"
    },
    {
      "item": "1",
      "user": "1"
    },
    {
      "item": "1",
      "user": "4"
    },
    {
      "item": "2",
      "user": "2"
    },
    {
      "item": "3",
      "user": "3"
    },
    {
      "item": "4",
      "user": "3"
    },
    {
      "item": "5",
      "user": "2"
    },
    {
      "item": "5",
      "user": "4"
    },
    {
      "item": "6",
      "user": "1"
    },
    {
      "item": "7",
      "user": "4"
    },
    {
      "item": "8",
      "user": "2"
    },
    {
      "item": "8",
      "user": "3"
    },
    {
      "item": "9",
      "user": "2"
    }
  ]
}
)json";

inline Dataset skydemo_dataset() { return dataset_from_json_text(std::string(kSkydemoJson)); }

}  // namespace dsmatch
