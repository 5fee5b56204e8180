#include "hypermono.h"
#include <stdio.h>

int main(void) {
  HmDescriptor *h = NULL;
  HmStatus s = hm_descriptor_from_json("{\"p\":3,\"upstairs\":[\"Char*(11)\"],\"downstairs\":[\"Char(2)\"]}", &h);
  if (s != HM_STATUS_OK) {
    fprintf(stderr, "%s\n", hm_last_error());
    return 1;
  }
  size_t d, m, w;
  uint64_t order;
  hm_descriptor_type(h, &d, &m, &w);
  hm_descriptor_wild_image_order(h, &order);
  char *json = NULL;
  hm_descriptor_analyze(h, &json);
  printf("%zu %zu %zu %llu %s\n", d, m, w, (unsigned long long)order, hm_version());
  hm_string_free(json);
  hm_descriptor_free(h);
  return 0;
}
