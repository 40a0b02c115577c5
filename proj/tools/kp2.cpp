// placeholder until the experiment harness lands
int main() { return 0; }
