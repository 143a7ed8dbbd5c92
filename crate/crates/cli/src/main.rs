fn main() {
    // placeholder while the library takes shape
}
